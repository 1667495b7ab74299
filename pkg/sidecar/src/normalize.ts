/**
 * Caption text normalization, mirroring the evaluation toolkit: lowercase,
 * strip the fixed punctuation set, split on whitespace.
 */

const PUNCTUATION = /[.,!?;:"'()-]/g;

export function tokenize(text: string): string[] {
  return text
    .toLowerCase()
    .replace(PUNCTUATION, '')
    .split(/\s+/)
    .filter((token) => token.length > 0);
}
