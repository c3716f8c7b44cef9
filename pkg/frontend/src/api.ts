/** Typed client for the catalogue REST API. All server interaction in the
 * UI funnels through here; views never call fetch directly. */

import type {
  ApiError, CanonicalRecord, CompatibilityReport, HarvestRun, LandscapeView,
  PromotionCandidate, Registry, RecordListResponse, SearchResponse,
  ValidationReport, Vocabulary,
} from './types';

export class ApiRequestError extends Error {
  constructor(public readonly error: ApiError) {
    super(`${error.code}: ${error.message}`);
  }
}

export interface SearchParams {
  text?: string;
  facets?: Record<string, string[]>;
  page?: number;
  size?: number;
  sort?: 'relevance' | 'name' | 'last_updated';
}

/** Query-string builder for GET /search; exported for tests. */
export function buildSearchQuery(params: SearchParams): URLSearchParams {
  const query = new URLSearchParams();
  if (params.text) query.set('q', params.text);
  for (const [facet, values] of Object.entries(params.facets ?? {})) {
    for (const value of values) query.append(`facet.${facet}`, value);
  }
  if (params.page) query.set('page', String(params.page));
  if (params.size) query.set('size', String(params.size));
  if (params.sort) query.set('sort', params.sort);
  return query;
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = '',
    private token: string | null = null,
    private readonly fetchFn: typeof fetch = fetch,
  ) {}

  setToken(token: string | null): void {
    this.token = token;
  }

  get readOnly(): boolean {
    return this.token === null;
  }

  private headers(extra: Record<string, string> = {}): Record<string, string> {
    const out: Record<string, string> = { ...extra };
    if (this.token) out['Authorization'] = `Bearer ${this.token}`;
    return out;
  }

  private async request<T>(method: string, path: string, options: {
    body?: unknown; headers?: Record<string, string>; raw?: boolean;
  } = {}): Promise<T> {
    const init: RequestInit = { method, headers: this.headers(options.headers ?? {}) };
    if (options.body !== undefined) {
      init.body = typeof options.body === 'string'
        ? options.body : JSON.stringify(options.body);
      (init.headers as Record<string, string>)['Content-Type'] ??=
        'application/json';
    }
    const response = await this.fetchFn(this.baseUrl + path, init);
    if (!response.ok) {
      let error: ApiError;
      try {
        error = await response.json() as ApiError;
      } catch {
        error = { status: response.status, code: 'HTTP_ERROR',
                  message: response.statusText };
      }
      throw new ApiRequestError(error);
    }
    if (response.status === 204) return undefined as T;
    if (options.raw) return await response.text() as T;
    return await response.json() as T;
  }

  search(params: SearchParams): Promise<SearchResponse> {
    return this.request('GET', `/search?${buildSearchQuery(params)}`);
  }

  listRecords(page = 1, size = 50, status?: string): Promise<RecordListResponse> {
    const query = new URLSearchParams({ page: String(page), size: String(size) });
    if (status) query.set('status', status);
    return this.request('GET', `/records?${query}`);
  }

  getRecord(id: string): Promise<CanonicalRecord> {
    return this.request('GET', `/records/${id}?format=json`);
  }

  /** Record plus its optimistic-concurrency revision (X-Revision header). */
  async getRecordWithRevision(id: string):
      Promise<{ record: CanonicalRecord; revision: number }> {
    const response = await this.fetchFn(`${this.baseUrl}/records/${id}?format=json`,
                                        { headers: this.headers() });
    if (!response.ok) {
      throw new ApiRequestError(await response.json() as ApiError);
    }
    return {
      record: await response.json() as CanonicalRecord,
      revision: Number(response.headers.get('X-Revision') ?? '1'),
    };
  }

  exportRecord(id: string, format: 'xml' | 'jsonld' | 'dcat' | 'schemaorg'):
      Promise<string> {
    return this.request('GET', `/records/${id}?format=${format}`, { raw: true });
  }

  validate(payload: CanonicalRecord): Promise<ValidationReport> {
    return this.request('POST', '/records:validate', { body: payload });
  }

  createRecord(payload: CanonicalRecord):
      Promise<{ id: string; report: ValidationReport }> {
    return this.request('POST', '/records', { body: payload });
  }

  updateRecord(id: string, payload: CanonicalRecord, revision: number):
      Promise<{ id: string; revision: number }> {
    return this.request('PUT', `/records/${id}`, {
      body: payload, headers: { 'X-Revision': String(revision) } });
  }

  deleteRecord(id: string): Promise<void> {
    return this.request('DELETE', `/records/${id}`);
  }

  claim(id: string): Promise<{ id: string; status: string }> {
    return this.request('POST', `/records/${id}:claim`);
  }

  setStatus(id: string, status: string): Promise<{ id: string; status: string }> {
    return this.request('POST', `/records/${id}:set-status`,
                        { body: { status } });
  }

  matches(id: string): Promise<{ tool: string; matches: CompatibilityReport[] }> {
    return this.request('GET', `/records/${id}/matches`);
  }

  subtypes(): Promise<{ subtypes: string[] }> {
    return this.request('GET', '/schema/subtypes');
  }

  registry(subtype: string): Promise<Registry> {
    return this.request('GET', `/schema/registry/${subtype}`);
  }

  taxonomy(vocabulary = 'lt-taxonomy'): Promise<Vocabulary> {
    return this.request('GET', `/taxonomy?vocabulary=${vocabulary}`);
  }

  vocabulary(id: string): Promise<Vocabulary> {
    return this.request('GET', `/vocabularies/${id}`);
  }

  vocabularySearch(id: string, label: string):
      Promise<{ hits: { iri: string; prefLabel: string }[] }> {
    const query = new URLSearchParams({ label });
    return this.request('GET', `/vocabularies/${id}/search?${query}`);
  }

  candidates(minCount = 2): Promise<{ candidates: PromotionCandidate[] }> {
    return this.request('GET', `/taxonomy/candidates?min_count=${minCount}`);
  }

  acceptCandidate(keyword: string, prefLabel?: string, broader?: string):
      Promise<{ iri: string }> {
    return this.request('POST',
                        `/taxonomy/candidates/${encodeURIComponent(keyword)}:accept`,
                        { body: { prefLabel, broader } });
  }

  landscape(a: string, b: string): Promise<LandscapeView> {
    return this.request('GET', `/landscape?a=${a}&b=${b}`);
  }

  harvestRuns(source: string): Promise<{ runs: HarvestRun[] }> {
    return this.request('GET', `/harvest/${source}/runs`);
  }

  runHarvest(source: string): Promise<HarvestRun> {
    return this.request('POST', `/harvest/${source}:run`);
  }
}
