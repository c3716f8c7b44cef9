/** Registry-driven editor form model.
 *
 * The form is generated from the server's field registry — the editor
 * never fabricates fields — and every inline finding comes from a server
 * dry-run validation, so the form surfaces exactly what the API reports
 * for the same payload.
 */

import type {
  CanonicalRecord, Finding, Registry, RegistryField, ValidationReport,
} from './types';

/** System-managed rows shown read-only in the form. */
const READ_ONLY_PATHS = new Set([
  'record_id', 'complies_with', 'curation_status', 'source',
]);

export interface FieldState {
  field: RegistryField;
  /** Canonical-JSON fragment for this field (top-level rows only). */
  value: unknown;
  findings: Finding[];
  readOnly: boolean;
}

function isTopLevel(path: string): boolean {
  return !path.includes('.') && !path.includes('[]');
}

/** Normalize a finding path to its registry row: strip the entity prefix
 * and concrete indices ("entity.input_specs[0].media_type" ->
 * "input_specs[].media_type"). */
export function registryPathFor(findingPath: string): string {
  let path = findingPath;
  if (path === 'entity' || path.startsWith('entity.')) {
    path = path === 'entity' ? '' : path.slice('entity.'.length);
  }
  return path.replace(/\[\d+\]/g, '[]');
}

export class EditorFormModel {
  readonly states: FieldState[];
  private readonly byPath = new Map<string, FieldState>();
  private extras: Record<string, unknown> = {};
  private formFindings: Finding[] = [];
  private lastReport: ValidationReport | null = null;

  constructor(readonly registry: Registry) {
    this.states = registry.fields.map((field) => ({
      field,
      value: undefined,
      findings: [],
      readOnly: READ_ONLY_PATHS.has(field.path),
    }));
    for (const state of this.states) {
      this.byPath.set(state.field.path, state);
    }
  }

  topLevelStates(): FieldState[] {
    return this.states.filter((s) => isTopLevel(s.field.path));
  }

  subStates(containerPath: string): FieldState[] {
    const repeated = `${containerPath}[].`;
    const dotted = `${containerPath}.`;
    return this.states.filter((s) =>
      s.field.path.startsWith(repeated) || s.field.path.startsWith(dotted));
  }

  state(path: string): FieldState | undefined {
    return this.byPath.get(path);
  }

  setValue(path: string, value: unknown): void {
    const state = this.byPath.get(path);
    if (!state) throw new Error(`no registry field at ${path}`);
    state.value = value;
  }

  /** Whether the field must be filled given the current values (the same
   * explicit condition tokens the server matrix uses). */
  isMandatory(field: RegistryField): boolean {
    if (field.level === 'mandatory') return true;
    if (field.level !== 'mandatory-if-applicable') return false;
    switch (field.condition) {
      case 'is_annotated':
        return this.boolValue('is_annotated');
      case 'is_functional_service':
        return this.boolValue('is_functional_service');
      case 'language_dependent':
        return this.boolValue('language_dependent', true);
      case 'ld_subtype_is_model': {
        const value = this.byPath.get('ld_subtype')?.value;
        return typeof value === 'string' &&
          (value.split('/').pop() ?? value).replace(/^ms:/, '') === 'model';
      }
      case 'status_ingested':
        return this.byPath.get('curation_status')?.value === 'ingested';
      default:
        return false;
    }
  }

  private boolValue(path: string, fallback = false): boolean {
    const value = this.byPath.get(path)?.value;
    return typeof value === 'boolean' ? value : fallback;
  }

  private bodyAt(envelope: Record<string, unknown>, chain: string[]):
      Record<string, unknown> | null {
    let node: unknown = envelope;
    for (const step of chain.slice(1)) {  // chain starts under MetadataRecord
      if (typeof node !== 'object' || node === null) return null;
      node = (node as Record<string, unknown>)[step];
    }
    return (typeof node === 'object' && node !== null)
      ? node as Record<string, unknown> : null;
  }

  private chainFor(scope: RegistryField['scope']): string[] {
    if (scope === 'common') return ['MetadataRecord', ...this.registry.commonChain];
    return ['MetadataRecord', ...this.registry.entityChain];
  }

  /** Distribute a canonical record into the form (inverse of payload()). */
  loadPayload(payload: CanonicalRecord): void {
    this.extras = {};
    const envelope = (payload.MetadataRecord ?? {}) as Record<string, unknown>;
    // chain key -> structural keys the form itself owns at that level
    const claimed = new Map<string, Set<string>>();
    const claim = (chainKey: string, key: string) => {
      const bucket = claimed.get(chainKey) ?? new Set<string>();
      bucket.add(key);
      claimed.set(chainKey, bucket);
    };
    claim('MetadataRecord', 'DescribedEntity');
    claim(this.chainFor('common').join('/'), 'entityType');
    claim(this.chainFor('common').join('/'), 'LRSubclass');
    claim(this.chainFor('subtype').join('/'), 'lrType');
    for (const state of this.topLevelStates()) {
      const scope = state.field.scope;
      const container = scope === 'envelope'
        ? envelope : this.bodyAt(envelope, this.chainFor(scope));
      state.value = container && state.field.jsonKey in container
        ? container[state.field.jsonKey] : undefined;
      claim(scope === 'envelope' ? 'MetadataRecord'
        : this.chainFor(scope).join('/'), state.field.jsonKey);
    }
    const levels: [RegistryField['scope'], string, Record<string, unknown> | null][] = [
      ['envelope', 'MetadataRecord', envelope],
      ['common', this.chainFor('common').join('/'),
       this.bodyAt(envelope, this.chainFor('common'))],
      ['subtype', this.chainFor('subtype').join('/'),
       this.bodyAt(envelope, this.chainFor('subtype'))],
    ];
    const seen = new Set<string>();
    for (const [scope, chainKey, container] of levels) {
      if (!container || seen.has(chainKey)) continue;
      seen.add(chainKey);
      const owned = claimed.get(chainKey) ?? new Set<string>();
      for (const [key, value] of Object.entries(container)) {
        if (!owned.has(key)) {
          // unknown server-side extras ride along untouched
          this.extras[`${scope}:${key}`] = value;
        }
      }
    }
  }

  /** Assemble the canonical record from the current values. */
  payload(): CanonicalRecord {
    const envelope: Record<string, unknown> = {};
    const common: Record<string, unknown> = {};
    const sub: Record<string, unknown> = {};
    for (const state of this.topLevelStates()) {
      if (state.value === undefined || state.value === null) continue;
      const target = state.field.scope === 'envelope' ? envelope
        : state.field.scope === 'common' ? common : sub;
      target[state.field.jsonKey] = state.value;
    }
    for (const [tagged, value] of Object.entries(this.extras)) {
      const split = tagged.indexOf(':');
      const scope = tagged.slice(0, split);
      const key = tagged.slice(split + 1);
      (scope === 'envelope' ? envelope : scope === 'common' ? common : sub)[key] =
        value;
    }
    if (this.registry.lrTypeToken) {
      const subtype = this.registry.entityChain[
        this.registry.entityChain.length - 1];
      envelope['DescribedEntity'] = {
        LanguageResource: {
          entityType: 'languageResource',
          ...common,
          LRSubclass: {
            [subtype]: { lrType: this.registry.lrTypeToken, ...sub },
          },
        },
      };
    } else {
      const subtype = this.registry.entityChain[
        this.registry.entityChain.length - 1];
      envelope['DescribedEntity'] = { [subtype]: { ...common, ...sub } };
    }
    return { MetadataRecord: envelope };
  }

  /** Attach a dry-run validation report; findings land on their fields. */
  applyReport(report: ValidationReport): void {
    this.lastReport = report;
    for (const state of this.states) state.findings = [];
    this.formFindings = [];
    for (const finding of report.findings) {
      const state = this.byPath.get(registryPathFor(finding.path));
      if (state) state.findings.push(finding);
      else this.formFindings.push(finding);
    }
  }

  /** Everything surfaced inline (field-anchored plus form-level); always
   * exactly the server report's findings. */
  inlineFindings(): Finding[] {
    const out: Finding[] = [];
    for (const state of this.states) out.push(...state.findings);
    out.push(...this.formFindings);
    return out;
  }

  unanchoredFindings(): Finding[] {
    return [...this.formFindings];
  }

  report(): ValidationReport | null {
    return this.lastReport;
  }

  /** A form is submittable iff the latest dry run reported zero errors. */
  submittable(): boolean {
    return this.lastReport !== null && this.lastReport.isMinimalCompliant;
  }
}
