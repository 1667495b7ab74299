import { describe, expect, it } from 'vitest';

import { cosine, parseWordVectorTable, SentenceEncoder } from '../src/embedding.js';
import { tokenize } from '../src/normalize.js';

describe('tokenize', () => {
  it('lowercases and strips punctuation', () => {
    expect(tokenize('A dog, barks!')).toEqual(['a', 'dog', 'barks']);
  });

  it('drops empty tokens', () => {
    expect(tokenize('  ...  !! ')).toEqual([]);
  });
});

describe('SentenceEncoder', () => {
  const encoder = new SentenceEncoder();

  it('is deterministic', () => {
    const a = encoder.encode('rain falls on the roof');
    const b = encoder.encode('rain falls on the roof');
    expect(Array.from(a)).toEqual(Array.from(b));
  });

  it('self-similarity is at least 0.99', () => {
    const vec = encoder.encode('a dog barks in the distance');
    expect(cosine(vec, vec)).toBeGreaterThanOrEqual(0.99);
  });

  it('self-match dominates other sentences', () => {
    const x = 'a dog barks in the distance';
    const self = cosine(encoder.encode(x), encoder.encode(x));
    const others = [
      'a dog barks in the yard',
      'rain falls on the roof',
      'completely unrelated words here',
      'distance the in barks dog a',
    ];
    for (const y of others) {
      expect(self).toBeGreaterThanOrEqual(cosine(encoder.encode(x), encoder.encode(y)));
    }
  });

  it('shared vocabulary scores above disjoint vocabulary', () => {
    const base = encoder.encode('a dog barks loudly');
    const near = cosine(base, encoder.encode('a dog barks quietly'));
    const far = cosine(base, encoder.encode('synthesizer melodies echo'));
    expect(near).toBeGreaterThan(far);
  });

  it('stays within [-1, 1]', () => {
    const sentences = ['a', 'a b', 'a b c', 'dog dog dog', 'the cat sat'];
    for (const s of sentences) {
      for (const t of sentences) {
        const value = cosine(encoder.encode(s), encoder.encode(t));
        expect(value).toBeGreaterThanOrEqual(-1);
        expect(value).toBeLessThanOrEqual(1);
      }
    }
  });

  it('empty sentences embed to the zero vector and score 0', () => {
    const empty = encoder.encode('...');
    expect(cosine(empty, encoder.encode('a dog'))).toBe(0);
  });

  it('uses a word-vector table when provided', () => {
    const table = parseWordVectorTable({
      dim: 2,
      vectors: { hello: [1, 0], world: [0, 1] },
    });
    const tableEncoder = new SentenceEncoder(table);
    const hello = tableEncoder.encode('hello');
    expect(Array.from(hello)).toEqual([1, 0]);
    expect(cosine(hello, tableEncoder.encode('world'))).toBe(0);
  });

  it('rejects malformed tables', () => {
    expect(() => parseWordVectorTable({ dim: 0, vectors: {} })).toThrow(/dim/);
    expect(() => parseWordVectorTable({ dim: 2, vectors: { x: [1] } })).toThrow(/length 2/);
    expect(() => parseWordVectorTable('nope')).toThrow(/JSON object/);
  });
});
