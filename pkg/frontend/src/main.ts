/** Entry point: hash routing between the catalogue views. Configure the
 * API base URL and token via localStorage keys `ltcat.apiBase` and
 * `ltcat.token`; without a token the UI runs read-only. */

import { ApiClient } from './api';
import { clear, el } from './dom';
import { CurationView } from './views/curation';
import { EditorView } from './views/editor';
import { LandscapeViewUi } from './views/landscape';
import { RecordView } from './views/record';
import { SearchView } from './views/search';

const apiBase = localStorage.getItem('ltcat.apiBase') ?? '';
const token = localStorage.getItem('ltcat.token');
const sources = (localStorage.getItem('ltcat.sources') ?? '')
  .split(',').map((s) => s.trim()).filter(Boolean);

const api = new ApiClient(apiBase, token);
const outlet = document.getElementById('app') as HTMLElement;

const searchView = new SearchView(api, outlet,
                                  (id) => { window.location.hash = `#/record/${id}`; });
const recordView = new RecordView(api, outlet);
const editorView = new EditorView(api, outlet,
                                  (id) => { window.location.hash = `#/record/${id}`; });
const curationView = new CurationView(api, outlet, sources);
const landscapeView = new LandscapeViewUi(api, outlet);

async function route(): Promise<void> {
  const hash = window.location.hash || '#/search';
  const segments = hash.slice(2).split('/');
  clear(outlet);
  outlet.append(el('p', { class: 'loading' }, 'Loading…'));
  try {
    if (segments[0] === 'record' && segments[1]) {
      await recordView.load(segments.slice(1).join('/'));
    } else if (segments[0] === 'edit' && segments[1]) {
      clear(outlet);
      await editorView.open(segments[1], segments[2]);
    } else if (segments[0] === 'new') {
      await editorView.pickSubtype();
    } else if (segments[0] === 'curation') {
      await curationView.load();
    } else if (segments[0] === 'landscape') {
      await landscapeView.load();
    } else {
      await searchView.load();
    }
  } catch (error) {
    clear(outlet);
    outlet.append(el('p', { class: 'error' }, String(error)));
  }
}

function renderNav(): void {
  const nav = document.getElementById('nav') as HTMLElement;
  clear(nav);
  const links: [string, string][] = [
    ['#/search', 'Search'], ['#/new', 'New record'],
    ['#/curation', 'Curation'], ['#/landscape', 'Landscape'],
  ];
  for (const [href, label] of links) {
    nav.append(el('a', { href }, label));
  }
  if (api.readOnly) {
    nav.append(el('span', { class: 'read-only-badge' }, 'read-only'));
  }
}

window.addEventListener('hashchange', () => void route());
renderNav();
void route();
