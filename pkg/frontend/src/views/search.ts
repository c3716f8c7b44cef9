/** Search view: facet sidebar (hierarchical LT-area tree), result list,
 * pagination. */

import { ApiClient, SearchParams } from '../api';
import { clear, el } from '../dom';
import {
  FACET_LABELS, FACET_ORDER, FacetSelection, FacetTreeNode, buildFacetTree,
  displayedCounts, toggleValue,
} from '../facets';
import type { FacetResult, SearchResponse, Vocabulary } from '../types';

const HIERARCHICAL: Record<string, string> = {
  ltArea: 'lt-taxonomy', domain: 'domain', mediaType: 'media-type',
};

export interface SearchState {
  text: string;
  selection: FacetSelection;
  page: number;
  sort: SearchParams['sort'];
}

export class SearchView {
  state: SearchState = { text: '', selection: {}, page: 1, sort: 'relevance' };
  private vocabularies = new Map<string, Vocabulary>();

  constructor(private readonly api: ApiClient,
              private readonly root: HTMLElement,
              private readonly openRecord: (id: string) => void) {}

  async load(): Promise<void> {
    for (const [facet, vocabId] of Object.entries(HIERARCHICAL)) {
      if (!this.vocabularies.has(facet)) {
        this.vocabularies.set(facet, await this.api.vocabulary(vocabId));
      }
    }
    const response = await this.api.search({
      text: this.state.text || undefined,
      facets: this.state.selection,
      page: this.state.page,
      size: 20,
      sort: this.state.sort,
    });
    this.render(response);
  }

  private async update(patch: Partial<SearchState>): Promise<void> {
    this.state = { ...this.state, ...patch };
    await this.load();
  }

  private render(response: SearchResponse): void {
    clear(this.root);
    const sidebar = el('aside', { class: 'facets' });
    for (const facetId of FACET_ORDER) {
      const result = response.facets.find((f) => f.facet === facetId);
      if (!result || result.buckets.length === 0) continue;
      sidebar.append(this.renderFacet(facetId, result));
    }

    const searchBox = el('input', {
      type: 'search', value: this.state.text, placeholder: 'Search the catalogue',
      onchange: (event) => {
        void this.update({ text: (event.target as HTMLInputElement).value, page: 1 });
      },
    });
    const sortSelect = el('select', {
      onchange: (event) => {
        void this.update({
          sort: (event.target as HTMLSelectElement).value as SearchState['sort'],
          page: 1,
        });
      },
    }, ...['relevance', 'name', 'last_updated'].map((sort) =>
      el('option', { value: sort, ...(sort === this.state.sort ? { selected: true } : {}) }, sort)));

    const list = el('div', { class: 'results' });
    for (const hit of response.hits) {
      list.append(el('article', { class: 'hit' },
        el('a', {
          href: `#/record/${hit.id}`, class: 'hit-name',
          onclick: (event) => { event.preventDefault(); this.openRecord(hit.id); },
        }, hit.name || hit.id),
        el('span', { class: 'hit-kind' }, hit.lrType ?? hit.entityKind),
        hit.description ? el('p', {}, hit.description) : null,
        el('small', {},
          `${hit.languages.join(', ')}  ·  ${hit.status}  ·  ${hit.lastUpdated}`),
      ));
    }

    const pageCount = Math.max(1, Math.ceil(response.total / 20));
    const pager = el('nav', { class: 'pager' },
      el('button', {
        ...(this.state.page <= 1 ? { disabled: true } : {}),
        onclick: () => void this.update({ page: this.state.page - 1 }),
      }, 'Previous'),
      el('span', {}, ` page ${this.state.page} / ${pageCount} — ${response.total} result(s) `),
      el('button', {
        ...(this.state.page >= pageCount ? { disabled: true } : {}),
        onclick: () => void this.update({ page: this.state.page + 1 }),
      }, 'Next'));

    this.root.append(
      el('div', { class: 'search-layout' },
        sidebar,
        el('section', { class: 'search-main' },
          el('div', { class: 'search-bar' }, searchBox, sortSelect),
          list, pager)));
  }

  private renderFacet(facetId: string, result: FacetResult): HTMLElement {
    const box = el('details', { class: 'facet', open: true },
      el('summary', {}, FACET_LABELS[facetId] ?? facetId));
    const vocabulary = this.vocabularies.get(facetId);
    if (vocabulary && HIERARCHICAL[facetId]) {
      const tree = buildFacetTree(vocabulary, result.buckets,
                                  this.state.selection[facetId] ?? []);
      const render = (nodes: FacetTreeNode[]): HTMLElement =>
        el('ul', { class: 'facet-tree' }, ...nodes.map((node) =>
          el('li', {},
            el('label', {},
              el('input', {
                type: 'checkbox',
                ...(node.selected ? { checked: true } : {}),
                onchange: () => void this.update({
                  selection: toggleValue(this.state.selection, facetId, node.iri),
                  page: 1,
                }),
              }),
              ` ${node.label}`,
              node.count !== null
                ? el('span', { class: 'count' }, ` ${String(node.count)}`) : null),
            node.children.length ? render(node.children) : null)));
      box.append(render(tree));
      return box;
    }
    const counts = displayedCounts(result);
    const selected = this.state.selection[facetId] ?? [];
    box.append(el('ul', {}, ...result.buckets.map((bucket) =>
      el('li', {},
        el('label', {},
          el('input', {
            type: 'checkbox',
            ...(selected.includes(bucket.value) ? { checked: true } : {}),
            onchange: () => void this.update({
              selection: toggleValue(this.state.selection, facetId, bucket.value),
              page: 1,
            }),
          }),
          ` ${bucket.label ?? bucket.value}`,
          el('span', { class: 'count' }, ` ${counts.get(bucket.value) ?? ''}`))))));
    return box;
  }
}
