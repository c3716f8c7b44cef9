/** Metadata editor: subtype picker, registry-generated form, live dry-run
 * validation, save via POST/PUT with revision tokens. */

import { ApiClient, ApiRequestError } from '../api';
import { clear, el } from '../dom';
import { EditorFormModel, FieldState } from '../editor';
import type { Finding } from '../types';

function findingLine(finding: Finding): HTMLElement {
  return el('div', { class: `finding ${finding.severity}` },
    `${finding.severity.toUpperCase()} [${finding.code}] ${finding.path}: ${finding.message}`);
}

export class EditorView {
  private model: EditorFormModel | null = null;
  private recordId: string | null = null;
  private revision = 1;
  private validateTimer: ReturnType<typeof setTimeout> | null = null;

  constructor(private readonly api: ApiClient,
              private readonly root: HTMLElement,
              private readonly onSaved: (id: string) => void) {}

  async open(subtype: string, recordId?: string): Promise<void> {
    const registry = await this.api.registry(subtype);
    this.model = new EditorFormModel(registry);
    this.recordId = recordId ?? null;
    if (recordId) {
      const { record, revision } = await this.api.getRecordWithRevision(recordId);
      this.revision = revision;
      this.model.loadPayload(record);
    } else {
      const today = new Date().toISOString().slice(0, 10);
      this.model.setValue('creation_date', today);
      this.model.setValue('last_updated', today);
    }
    await this.revalidate();
  }

  async pickSubtype(): Promise<void> {
    clear(this.root);
    const { subtypes } = await this.api.subtypes();
    this.root.append(
      el('h2', {}, 'New record'),
      el('ul', { class: 'subtype-picker' }, ...subtypes.map((subtype) =>
        el('li', {}, el('button', {
          onclick: () => { window.location.hash = `#/edit/${subtype}`; },
        }, subtype)))));
  }

  private scheduleValidate(): void {
    if (this.validateTimer) clearTimeout(this.validateTimer);
    this.validateTimer = setTimeout(() => void this.revalidate(), 400);
  }

  private async revalidate(): Promise<void> {
    if (!this.model) return;
    const report = await this.api.validate(this.model.payload());
    this.model.applyReport(report);
    this.render();
  }

  private async save(): Promise<void> {
    if (!this.model || !this.model.submittable()) return;
    const payload = this.model.payload();
    try {
      if (this.recordId) {
        const result = await this.api.updateRecord(this.recordId, payload,
                                                   this.revision);
        this.revision = result.revision;
        this.onSaved(this.recordId);
      } else {
        const result = await this.api.createRecord(payload);
        this.onSaved(result.id);
      }
    } catch (error) {
      if (error instanceof ApiRequestError && error.error.status === 409) {
        // stale revision: reload the server copy so the curator can re-apply
        const { record, revision } =
          await this.api.getRecordWithRevision(this.recordId!);
        this.model.loadPayload(record);
        this.revision = revision;
        await this.revalidate();
        const banner = document.getElementById('editor-banner');
        if (banner) {
          banner.textContent =
            'The record changed elsewhere; the latest version was reloaded.';
        }
        return;
      }
      throw error;
    }
  }

  private render(): void {
    if (!this.model) return;
    clear(this.root);
    const model = this.model;
    const form = el('form', {
      class: 'editor',
      onsubmit: (event) => { event.preventDefault(); void this.save(); },
    });
    form.append(el('h2', {}, `${model.registry.subtype} record`),
                el('p', { id: 'editor-banner', class: 'banner' }));

    for (const state of model.topLevelStates()) {
      form.append(this.renderField(state));
    }
    const stray = model.unanchoredFindings();
    if (stray.length) {
      form.append(el('section', { class: 'form-findings' },
        ...stray.map(findingLine)));
    }
    const report = model.report();
    form.append(el('footer', {},
      el('button', {
        type: 'submit',
        ...(model.submittable() && !this.api.readOnly ? {} : { disabled: true }),
      }, this.recordId ? 'Save changes' : 'Create record'),
      el('span', { class: 'compliance' },
        report === null ? ''
          : report.isMinimalCompliant
            ? 'minimal-compliant' : 'not compliant yet')));
    this.root.append(form);
  }

  private renderField(state: FieldState): HTMLElement {
    const model = this.model!;
    const field = state.field;
    const mandatory = model.isMandatory(field);
    const wrapper = el('div', {
      class: `field${mandatory ? ' mandatory' : ''}${state.readOnly ? ' readonly' : ''}`,
      'data-path': field.path,
    });
    wrapper.append(el('label', {},
      field.label,
      mandatory ? el('span', { class: 'required-mark', title: 'mandatory' }, ' *') : null,
      field.level === 'recommended'
        ? el('span', { class: 'recommended-mark' }, ' (recommended)') : null));

    wrapper.append(this.renderInput(state));

    if (field.vocabulary) {
      wrapper.append(this.renderTypeahead(state));
    }
    for (const finding of state.findings) {
      wrapper.append(findingLine(finding));
    }
    return wrapper;
  }

  private renderInput(state: FieldState): HTMLElement {
    const model = this.model!;
    const field = state.field;
    if (field.kind === 'bool') {
      return el('input', {
        type: 'checkbox',
        ...(state.value === true ? { checked: true } : {}),
        ...(state.readOnly ? { disabled: true } : {}),
        onchange: (event) => {
          model.setValue(field.path, (event.target as HTMLInputElement).checked);
          this.scheduleValidate();
        },
      });
    }
    if (field.kind === 'date') {
      return el('input', {
        type: 'date', value: typeof state.value === 'string' ? state.value : '',
        ...(state.readOnly ? { disabled: true } : {}),
        onchange: (event) => {
          model.setValue(field.path, (event.target as HTMLInputElement).value);
          this.scheduleValidate();
        },
      });
    }
    // structured kinds edit their canonical JSON fragment directly; simple
    // text kinds get a plain input
    const structured = !['text', 'int', 'number', 'status', 'fixed',
                         'concept'].includes(field.kind);
    const serialized = state.value === undefined ? ''
      : structured ? JSON.stringify(state.value, null, 1) : String(state.value);
    const commit = (raw: string) => {
      if (!raw.trim()) {
        model.setValue(field.path, undefined);
      } else if (structured) {
        try {
          model.setValue(field.path, JSON.parse(raw));
        } catch {
          return; // keep typing; validated on next parseable state
        }
      } else if (field.kind === 'int' || field.kind === 'number') {
        model.setValue(field.path, Number(raw));
      } else {
        model.setValue(field.path, raw);
      }
      this.scheduleValidate();
    };
    if (structured) {
      return el('textarea', {
        rows: '3',
        ...(state.readOnly ? { disabled: true } : {}),
        oninput: (event) => commit((event.target as HTMLTextAreaElement).value),
      }, serialized);
    }
    return el('input', {
      type: 'text', value: serialized,
      ...(state.readOnly ? { disabled: true } : {}),
      oninput: (event) => commit((event.target as HTMLInputElement).value),
    });
  }

  private renderTypeahead(state: FieldState): HTMLElement {
    const field = state.field;
    const results = el('ul', { class: 'typeahead-results' });
    const input = el('input', {
      type: 'search', placeholder: `look up ${field.vocabulary}`,
      oninput: (event) => {
        const needle = (event.target as HTMLInputElement).value;
        if (needle.length < 2) { clear(results); return; }
        void this.api.vocabularySearch(field.vocabulary!, needle).then((hits) => {
          clear(results);
          for (const hit of hits.hits.slice(0, 8)) {
            results.append(el('li', {}, el('button', {
              type: 'button',
              onclick: () => {
                const model = this.model!;
                const token = `ms:${hit.iri.split('/').pop()}`;
                if (field.repeatable) {
                  const current = Array.isArray(state.value) ? state.value : [];
                  model.setValue(field.path, [...current, token]);
                } else {
                  model.setValue(field.path, token);
                }
                this.scheduleValidate();
              },
            }, `${hit.prefLabel} — ${hit.iri}`)));
          }
        });
      },
    });
    return el('div', { class: 'typeahead' }, input, results);
  }
}
