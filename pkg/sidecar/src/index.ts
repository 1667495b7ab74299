/**
 * CLI entry: start the scorer service.
 *
 *   node dist/index.js [--port N] [--aggregation mean|max] [--model-path file.json]
 *
 * A model file that fails to load or validate refuses to start (exit 1).
 */

import { readFileSync } from 'node:fs';
import { pathToFileURL } from 'node:url';

import { parseWordVectorTable, SentenceEncoder } from './embedding.js';
import { createApp, type Aggregation } from './server.js';

interface CliOptions {
  port: number;
  aggregation: Aggregation;
  modelPath: string | null;
}

export function parseArgs(argv: string[]): CliOptions {
  const options: CliOptions = { port: 8087, aggregation: 'mean', modelPath: null };
  for (let i = 0; i < argv.length; i++) {
    const flag = argv[i];
    const value = argv[i + 1];
    switch (flag) {
      case '--port':
        options.port = Number(value);
        i++;
        if (!Number.isInteger(options.port) || options.port < 0 || options.port > 65535) {
          throw new Error(`invalid --port ${value}`);
        }
        break;
      case '--aggregation':
        if (value !== 'mean' && value !== 'max') {
          throw new Error(`invalid --aggregation ${value}; use mean or max`);
        }
        options.aggregation = value;
        i++;
        break;
      case '--model-path':
        if (!value) throw new Error('--model-path needs a file argument');
        options.modelPath = value;
        i++;
        break;
      default:
        throw new Error(`unknown flag ${flag}`);
    }
  }
  return options;
}

export function buildEncoder(modelPath: string | null): SentenceEncoder {
  if (modelPath === null) {
    return new SentenceEncoder();
  }
  const raw: unknown = JSON.parse(readFileSync(modelPath, 'utf-8'));
  return new SentenceEncoder(parseWordVectorTable(raw));
}

function main(): void {
  let options: CliOptions;
  let encoder: SentenceEncoder;
  try {
    options = parseArgs(process.argv.slice(2));
    encoder = buildEncoder(options.modelPath);
  } catch (err) {
    console.error(`scorer-sidecar: ${err instanceof Error ? err.message : err}`);
    process.exit(1);
  }
  const app = createApp({ encoder, aggregation: options.aggregation });
  const server = app.listen(options.port, () => {
    const address = server.address();
    const port = typeof address === 'object' && address ? address.port : options.port;
    console.log(`scorer-sidecar listening on port ${port} (aggregation=${options.aggregation})`);
  });
}

if (process.argv[1] !== undefined && import.meta.url === pathToFileURL(process.argv[1]).href) {
  main();
}
