/** Record detail: populated fields grouped by section, export buttons,
 * compatibility panel for tools. */

import { ApiClient, ApiRequestError } from '../api';
import { clear, el, labelled } from '../dom';
import type { CanonicalRecord, CompatibilityReport } from '../types';

function scalarText(value: unknown): string {
  if (value === null || value === undefined) return '';
  if (typeof value === 'object') return JSON.stringify(value);
  return String(value);
}

function renderValue(value: unknown): HTMLElement {
  if (Array.isArray(value)) {
    return el('ul', {}, ...value.map((item) => el('li', {}, renderValue(item))));
  }
  if (value !== null && typeof value === 'object') {
    const entries = Object.entries(value as Record<string, unknown>);
    return el('dl', {}, ...entries.flatMap(([key, sub]) => [
      el('dt', {}, key), el('dd', {}, renderValue(sub))]));
  }
  return el('span', {}, scalarText(value));
}

export class RecordView {
  constructor(private readonly api: ApiClient,
              private readonly root: HTMLElement) {}

  async load(id: string): Promise<void> {
    clear(this.root);
    let record: CanonicalRecord;
    try {
      record = await this.api.getRecord(id);
    } catch (error) {
      this.root.append(el('p', { class: 'error' },
        error instanceof ApiRequestError
          ? `${error.error.code}: ${error.error.message}` : String(error)));
      return;
    }
    const envelope = record.MetadataRecord as Record<string, unknown>;
    const described = envelope['DescribedEntity'] as Record<string, unknown> ?? {};
    const lr = described['LanguageResource'] as Record<string, unknown> | undefined;
    const entityKind = lr ? 'LanguageResource' : Object.keys(described)[0];
    const body = lr ?? (described[entityKind] as Record<string, unknown>) ?? {};
    const subclass = lr?.['LRSubclass'] as Record<string, unknown> | undefined;
    const subtype = subclass ? Object.keys(subclass)[0] : entityKind;
    const subBody = subclass
      ? subclass[subtype] as Record<string, unknown> : undefined;

    const names = body['resourceName']
      ?? body['organizationName'] ?? body['projectName'] ?? body['title']
      ?? body['licenceTermsName'] ?? body['surname'];
    const title = typeof names === 'object' && names !== null
      ? Object.values(names as Record<string, string>)[0] : id;

    const header = el('header', {},
      el('h2', {}, String(title)),
      el('p', { class: 'record-kind' }, `${subtype} · ${id}`));

    const exports = el('div', { class: 'exports' },
      ...(['xml', 'jsonld', 'dcat', 'schemaorg'] as const).map((format) =>
        el('button', {
          onclick: () => void this.export(id, format),
        }, `Export ${format.toUpperCase()}`)));
    const exportOut = el('pre', { class: 'export-output', id: 'export-output' });

    const sections = el('div', { class: 'record-sections' });
    sections.append(this.section('Record', envelope, ['DescribedEntity']));
    sections.append(this.section('Entity', body, ['LRSubclass', 'entityType']));
    if (subBody) {
      sections.append(this.section(subtype, subBody, ['lrType']));
    }

    this.root.append(header, exports, exportOut, sections);

    if (subtype === 'ToolService') {
      const panel = el('section', { class: 'matches' },
        el('h3', {}, 'Candidate input resources'));
      this.root.append(panel);
      try {
        const { matches } = await this.api.matches(id);
        panel.append(this.renderMatches(matches));
      } catch (error) {
        panel.append(el('p', {}, String(error)));
      }
    }
  }

  private section(heading: string, body: Record<string, unknown>,
                  skip: string[]): HTMLElement {
    const block = el('section', { class: 'record-section' },
      el('h3', {}, heading));
    for (const [key, value] of Object.entries(body)) {
      if (skip.includes(key) || value === null || value === undefined) continue;
      block.append(labelled(key, renderValue(value)));
    }
    return block;
  }

  private renderMatches(matches: CompatibilityReport[]): HTMLElement {
    if (!matches.length) return el('p', {}, 'No compatible resources found.');
    return el('table', {},
      el('thead', {}, el('tr', {},
        el('th', {}, 'Resource'), el('th', {}, 'Language'),
        el('th', {}, 'Media'), el('th', {}, 'Format'))),
      el('tbody', {}, ...matches.map((m) => el('tr', {},
        el('td', {}, el('a', { href: `#/record/${m.resource}` }, m.resource)),
        el('td', {}, m.matchedOn?.language ?? 'any'),
        el('td', {}, m.matchedOn?.mediaType.split('/').pop() ?? ''),
        el('td', {}, m.matchedOn?.dataFormat.split('/').pop() ?? '')))));
  }

  private async export(id: string, format: 'xml' | 'jsonld' | 'dcat' | 'schemaorg'):
      Promise<void> {
    const out = document.getElementById('export-output');
    if (!out) return;
    try {
      out.textContent = await this.api.exportRecord(id, format);
    } catch (error) {
      out.textContent = error instanceof ApiRequestError
        ? `${error.error.code}: ${error.error.message}` : String(error);
    }
  }
}
