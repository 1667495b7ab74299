/**
 * HTTP surface of the scorer.
 *
 * Protocol: POST /similarity {hypothesis, references[]} -> {score};
 * POST /fluency {sentence} -> {error_probability}; batch variants take arrays
 * and return aligned arrays; GET /healthz -> 200 "ok". Malformed JSON or
 * wrong shapes -> 400; internal failures -> 500.
 */

import express, { type Express, type NextFunction, type Request, type Response } from 'express';
import { z } from 'zod';

import { cosine, SentenceEncoder } from './embedding.js';
import { errorProbability } from './fluency.js';

export type Aggregation = 'mean' | 'max';

export interface ServerConfig {
  encoder: SentenceEncoder;
  aggregation: Aggregation;
}

const similarityRequest = z.object({
  hypothesis: z.string(),
  references: z.array(z.string()).min(1),
});
const fluencyRequest = z.object({ sentence: z.string() });
const similarityBatchRequest = z.object({ items: z.array(similarityRequest) });
const fluencyBatchRequest = z.object({ sentences: z.array(z.string()) });

export function similarityScore(
  config: ServerConfig,
  hypothesis: string,
  references: string[],
): number {
  const hypVec = config.encoder.encode(hypothesis);
  const scores = references.map((ref) => cosine(hypVec, config.encoder.encode(ref)));
  if (config.aggregation === 'max') {
    return Math.max(...scores);
  }
  return scores.reduce((acc, s) => acc + s, 0) / scores.length;
}

function parseBody<T>(schema: z.ZodType<T>, req: Request, res: Response): T | null {
  const result = schema.safeParse(req.body);
  if (!result.success) {
    res.status(400).json({ error: `invalid request body: ${result.error.issues[0]?.message ?? 'bad shape'}` });
    return null;
  }
  return result.data;
}

export function createApp(config: ServerConfig): Express {
  const app = express();
  app.use(express.json({ limit: '2mb' }));

  app.get('/healthz', (_req, res) => {
    res.status(200).type('text/plain').send('ok');
  });

  app.post('/similarity', (req, res) => {
    const body = parseBody(similarityRequest, req, res);
    if (!body) return;
    res.json({ score: similarityScore(config, body.hypothesis, body.references) });
  });

  app.post('/similarity_batch', (req, res) => {
    const body = parseBody(similarityBatchRequest, req, res);
    if (!body) return;
    const scores = body.items.map((item) =>
      similarityScore(config, item.hypothesis, item.references),
    );
    res.json({ scores });
  });

  app.post('/fluency', (req, res) => {
    const body = parseBody(fluencyRequest, req, res);
    if (!body) return;
    res.json({ error_probability: errorProbability(body.sentence) });
  });

  app.post('/fluency_batch', (req, res) => {
    const body = parseBody(fluencyBatchRequest, req, res);
    if (!body) return;
    res.json({ error_probabilities: body.sentences.map(errorProbability) });
  });

  // Body-parser JSON syntax errors arrive here with status 400 already set.
  app.use((err: Error & { status?: number }, _req: Request, res: Response, next: NextFunction) => {
    if (res.headersSent) {
      next(err);
      return;
    }
    if (err.status === 400 || err instanceof SyntaxError) {
      res.status(400).json({ error: 'malformed JSON body' });
      return;
    }
    res.status(500).json({ error: 'internal error' });
  });

  return app;
}
