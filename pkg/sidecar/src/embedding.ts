/**
 * Deterministic sentence encoder.
 *
 * The default encoder hashes each token and its character trigrams into a
 * fixed-dimension signed feature vector and L2-normalizes the sum, so no
 * model weights are needed and identical sentences always embed identically.
 * A word-vector table (JSON: {dim, vectors: {word: number[]}}) can be
 * supplied instead; unknown words fall back to the hashed features.
 */

import { tokenize } from './normalize.js';

export const DEFAULT_DIM = 384;

export interface WordVectorTable {
  dim: number;
  vectors: Record<string, number[]>;
}

/** FNV-1a 32-bit hash. */
function fnv1a(text: string): number {
  let hash = 0x811c9dc5;
  for (let i = 0; i < text.length; i++) {
    hash ^= text.charCodeAt(i);
    hash = Math.imul(hash, 0x01000193);
  }
  return hash >>> 0;
}

function addHashedFeature(vec: Float64Array, feature: string, weight: number): void {
  const hash = fnv1a(feature);
  const index = hash % vec.length;
  const sign = (hash >>> 31) === 1 ? -1 : 1;
  vec[index] += sign * weight;
}

export class SentenceEncoder {
  readonly dim: number;
  private readonly table: WordVectorTable | null;

  constructor(table: WordVectorTable | null = null) {
    this.table = table;
    this.dim = table ? table.dim : DEFAULT_DIM;
  }

  private addToken(vec: Float64Array, token: string): void {
    const tableVec = this.table?.vectors[token];
    if (tableVec) {
      for (let i = 0; i < this.dim; i++) vec[i] += tableVec[i];
      return;
    }
    addHashedFeature(vec, `w:${token}`, 1.0);
    const padded = `#${token}#`;
    for (let i = 0; i + 3 <= padded.length; i++) {
      addHashedFeature(vec, `c:${padded.slice(i, i + 3)}`, 0.5);
    }
  }

  encode(sentence: string): Float64Array {
    const vec = new Float64Array(this.dim);
    for (const token of tokenize(sentence)) {
      this.addToken(vec, token);
    }
    let normSq = 0;
    for (let i = 0; i < vec.length; i++) normSq += vec[i] * vec[i];
    if (normSq > 0) {
      const norm = Math.sqrt(normSq);
      for (let i = 0; i < vec.length; i++) vec[i] /= norm;
    }
    return vec;
  }
}

/** Cosine of two encoded (already normalized) vectors, clamped to [-1, 1]. */
export function cosine(a: Float64Array, b: Float64Array): number {
  let dot = 0;
  let normA = 0;
  let normB = 0;
  for (let i = 0; i < a.length; i++) {
    dot += a[i] * b[i];
    normA += a[i] * a[i];
    normB += b[i] * b[i];
  }
  if (normA === 0 || normB === 0) return 0;
  const value = dot / Math.sqrt(normA * normB);
  return Math.max(-1, Math.min(1, value));
}

export function parseWordVectorTable(raw: unknown): WordVectorTable {
  if (typeof raw !== 'object' || raw === null) {
    throw new Error('model file must be a JSON object');
  }
  const candidate = raw as { dim?: unknown; vectors?: unknown };
  if (typeof candidate.dim !== 'number' || !Number.isInteger(candidate.dim) || candidate.dim <= 0) {
    throw new Error('model file needs a positive integer "dim"');
  }
  if (typeof candidate.vectors !== 'object' || candidate.vectors === null) {
    throw new Error('model file needs a "vectors" object');
  }
  for (const [word, vec] of Object.entries(candidate.vectors as Record<string, unknown>)) {
    if (!Array.isArray(vec) || vec.length !== candidate.dim || vec.some((v) => typeof v !== 'number')) {
      throw new Error(`vector for ${JSON.stringify(word)} must be a number array of length ${candidate.dim}`);
    }
  }
  return candidate as WordVectorTable;
}
