/**
 * Rule-based fluency error estimator.
 *
 * Flags caption-level disfluency signals: immediate word repetition, one-word
 * or empty sentences, heavy vocabulary repetition, and the absence of any
 * verb-like token. Deterministic, output always in [0, 1].
 */

import { tokenize } from './normalize.js';

const WEIGHTS = {
  empty: 1.0,
  singleWord: 0.6,
  adjacentRepeat: 0.5,
  heavyRepetition: 0.4,
  noVerbLike: 0.25,
};

function looksVerbLike(token: string): boolean {
  return token.length > 3 && (token.endsWith('s') || token.endsWith('ing') || token.endsWith('ed'));
}

export function errorProbability(sentence: string): number {
  const tokens = tokenize(sentence);
  if (tokens.length === 0) return WEIGHTS.empty;

  let score = 0;
  if (tokens.length === 1) score += WEIGHTS.singleWord;
  for (let i = 1; i < tokens.length; i++) {
    if (tokens[i] === tokens[i - 1]) {
      score += WEIGHTS.adjacentRepeat;
      break;
    }
  }
  const distinctRatio = new Set(tokens).size / tokens.length;
  if (distinctRatio < 0.5) score += WEIGHTS.heavyRepetition;
  if (!tokens.some(looksVerbLike)) score += WEIGHTS.noVerbLike;

  return Math.min(1, score);
}
