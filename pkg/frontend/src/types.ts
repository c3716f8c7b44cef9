/** Payload shapes of the catalogue REST API (see the service's
 * api_description.json for the route table). */

export type Severity = 'error' | 'warning' | 'info';

export interface Finding {
  path: string;
  severity: Severity;
  code: string;
  message: string;
  expected?: string;
  actual?: string;
}

export interface ValidationReport {
  recordId: string | null;
  isMinimalCompliant: boolean;
  isFullyCompliant: boolean;
  findings: Finding[];
}

export interface FacetBucket {
  value: string;
  count: number;
  rolledUp: boolean;
  label?: string;
}

export interface FacetResult {
  facet: string;
  buckets: FacetBucket[];
}

export interface RecordSummary {
  id: string;
  entityKind: string;
  lrType: string | null;
  name: string;
  shortName: string | null;
  description: string | null;
  lastUpdated: string;
  status: string;
  languages: string[];
  ltAreas: string[];
  licences: string[];
}

export interface SearchResponse {
  total: number;
  hits: RecordSummary[];
  facets: FacetResult[];
}

export type OptionalityLevel =
  'mandatory' | 'mandatory-if-applicable' | 'recommended' | 'optional';

export interface RegistryField {
  path: string;
  jsonKey: string;
  scope: 'envelope' | 'common' | 'subtype';
  label: string;
  level: OptionalityLevel;
  condition: string | null;
  kind: string;
  vocabulary: string | null;
  repeatable: boolean;
}

export interface Registry {
  subtype: string;
  fields: RegistryField[];
  commonChain: string[];
  entityChain: string[];
  lrTypeToken: string | null;
}

export interface Concept {
  iri: string;
  prefLabel: Record<string, string>;
  altLabels: Record<string, string>[];
  broader: string | null;
  deprecated: boolean;
}

export interface Vocabulary {
  id: string;
  concepts: Concept[];
}

export interface MatchEvidence {
  language: string | null;
  mediaType: string;
  dataFormat: string;
}

export interface CompatibilityReport {
  tool: string;
  resource: string;
  compatible: boolean;
  matchedOn?: MatchEvidence;
  failures?: { dimension: string; expected: string; actual: string }[];
}

export interface HarvestRun {
  source: string;
  started: string;
  finished: string;
  fetched: number;
  accepted: number;
  rejected: number;
  duplicates: number;
  findings: string[];
}

export interface LandscapeCell {
  a: string;
  b: string;
  count: number;
}

export interface LandscapeView {
  a: string;
  b: string;
  cells: LandscapeCell[];
}

export interface PromotionCandidate {
  keyword: string;
  occurrenceCount: number;
  coOccurring: string[];
  status: string;
}

export interface ApiError {
  status: number;
  code: string;
  message: string;
  findings?: ValidationReport;
}

export interface RecordListResponse {
  items: (RecordSummary & { revision: number; deleted: boolean })[];
  total: number;
  page: number;
  size: number;
}

/** Canonical record JSON: same structure the XML dialect mirrors. */
export type CanonicalRecord = { MetadataRecord: Record<string, unknown> };
