/** Facet sidebar model. Counts shown in the UI are taken verbatim from the
 * API response — never recomputed client-side — so displayed numbers always
 * byte-match the server's. */

import type { Concept, FacetBucket, FacetResult, Vocabulary } from './types';

export type FacetSelection = Record<string, string[]>;

export const FACET_ORDER = [
  'entityKind', 'lrType', 'ltArea', 'language', 'licence', 'mediaType',
  'domain', 'keyword',
] as const;

export const FACET_LABELS: Record<string, string> = {
  entityKind: 'Entity kind',
  lrType: 'Resource type',
  ltArea: 'LT area',
  language: 'Language',
  licence: 'Licence',
  mediaType: 'Media type',
  domain: 'Domain',
  keyword: 'Keyword',
};

/** Toggle one value in a selection, dropping empty facets. */
export function toggleValue(selection: FacetSelection, facet: string,
                            value: string): FacetSelection {
  const current = selection[facet] ?? [];
  const next = current.includes(value)
    ? current.filter((v) => v !== value)
    : [...current, value];
  const out: FacetSelection = { ...selection };
  if (next.length) out[facet] = next;
  else delete out[facet];
  return out;
}

/** The exact strings the sidebar displays for one facet: value -> count
 * text, straight from the response (facet parity contract). */
export function displayedCounts(result: FacetResult): Map<string, string> {
  const out = new Map<string, string>();
  for (const bucket of result.buckets) {
    out.set(bucket.value, String(bucket.count));
  }
  return out;
}

export interface FacetTreeNode {
  iri: string;
  label: string;
  count: number | null;
  selected: boolean;
  deprecated: boolean;
  children: FacetTreeNode[];
}

function conceptLabel(concept: Concept): string {
  return concept.prefLabel['en']
    ?? Object.values(concept.prefLabel)[0]
    ?? concept.iri.split('/').pop()
    ?? concept.iri;
}

/** Collapsible tree for a hierarchical facet: the vocabulary gives the
 * shape, the response buckets give the counts. Branches without a counted
 * or selected node anywhere below are pruned. */
export function buildFacetTree(vocabulary: Vocabulary, buckets: FacetBucket[],
                               selected: string[]): FacetTreeNode[] {
  const counts = new Map(buckets.map((b) => [b.value, b.count]));
  const byBroader = new Map<string | null, Concept[]>();
  for (const concept of vocabulary.concepts) {
    const key = concept.broader;
    const bucket = byBroader.get(key) ?? [];
    bucket.push(concept);
    byBroader.set(key, bucket);
  }

  const build = (concept: Concept): FacetTreeNode | null => {
    const children = (byBroader.get(concept.iri) ?? [])
      .map(build)
      .filter((node): node is FacetTreeNode => node !== null);
    children.sort((a, b) => a.label.localeCompare(b.label));
    const count = counts.get(concept.iri) ?? null;
    const isSelected = selected.includes(concept.iri);
    if (count === null && !isSelected && children.length === 0) return null;
    return {
      iri: concept.iri,
      label: conceptLabel(concept),
      count,
      selected: isSelected,
      deprecated: concept.deprecated,
      children,
    };
  };

  const roots = (byBroader.get(null) ?? [])
    .map(build)
    .filter((node): node is FacetTreeNode => node !== null);
  roots.sort((a, b) => a.label.localeCompare(b.label));
  return roots;
}

/** Flat value list for non-hierarchical facets, count-descending like the
 * server sends them. */
export function flatBuckets(result: FacetResult): FacetBucket[] {
  return [...result.buckets];
}
