/** Curation dashboard: claim / status transitions per the lifecycle matrix,
 * plus harvest source runs. */

import { ApiClient, ApiRequestError } from '../api';
import { clear, el } from '../dom';
import type { HarvestRun } from '../types';

/** Forward transitions; the server additionally allows admins one revert. */
const NEXT_STATUS: Record<string, string> = {
  ingested: 'claimed',
  claimed: 'curated',
  curated: 'validated',
};

export class CurationView {
  constructor(private readonly api: ApiClient,
              private readonly root: HTMLElement,
              private readonly sources: string[]) {}

  async load(): Promise<void> {
    clear(this.root);
    const records = await this.api.listRecords(1, 100);
    const table = el('table', { class: 'curation' },
      el('thead', {}, el('tr', {},
        el('th', {}, 'Record'), el('th', {}, 'Status'), el('th', {}, 'Updated'),
        el('th', {}, 'Actions'))),
      el('tbody', {}, ...records.items.map((item) => {
        const actions = el('td', {});
        const next = NEXT_STATUS[item.status];
        if (item.status === 'ingested') {
          actions.append(el('button', {
            ...(this.api.readOnly ? { disabled: true } : {}),
            onclick: () => void this.transition(() => this.api.claim(item.id)),
          }, 'Claim'));
        } else if (next) {
          actions.append(el('button', {
            ...(this.api.readOnly ? { disabled: true } : {}),
            onclick: () => void this.transition(
              () => this.api.setStatus(item.id, next)),
          }, `Mark ${next}`));
        }
        return el('tr', {},
          el('td', {}, el('a', { href: `#/record/${item.id}` },
                          item.name || item.id)),
          el('td', {}, item.status),
          el('td', {}, item.lastUpdated),
          actions);
      })));

    const harvest = el('section', { class: 'harvest' },
      el('h3', {}, 'Harvest sources'));
    for (const source of this.sources) {
      harvest.append(await this.renderSource(source));
    }
    this.root.append(el('h2', {}, 'Curation'), table, harvest);
  }

  private async transition(action: () => Promise<unknown>): Promise<void> {
    try {
      await action();
    } catch (error) {
      if (error instanceof ApiRequestError) {
        window.alert(`${error.error.code}: ${error.error.message}`);
      } else {
        throw error;
      }
    }
    await this.load();
  }

  private async renderSource(source: string): Promise<HTMLElement> {
    let runs: HarvestRun[] = [];
    try {
      runs = (await this.api.harvestRuns(source)).runs;
    } catch {
      // unknown source configs simply show empty history
    }
    return el('div', { class: 'harvest-source' },
      el('h4', {}, source),
      el('button', {
        ...(this.api.readOnly ? { disabled: true } : {}),
        onclick: () => void this.transition(() => this.api.runHarvest(source)),
      }, 'Run harvest'),
      el('table', {},
        el('thead', {}, el('tr', {},
          el('th', {}, 'Started'), el('th', {}, 'Fetched'),
          el('th', {}, 'Accepted'), el('th', {}, 'Rejected'),
          el('th', {}, 'Duplicates'))),
        el('tbody', {}, ...runs.map((run) => el('tr', {},
          el('td', {}, run.started), el('td', {}, String(run.fetched)),
          el('td', {}, String(run.accepted)), el('td', {}, String(run.rejected)),
          el('td', {}, String(run.duplicates)))))));
  }
}
