// DOM bootstrap: renders the table into #app and wires the controls.

import * as api from "./api.js";
import { TableController } from "./controller.js";
import { actionButtonsHtml, bannerHtml, historyHtml, tableHtml } from "./render.js";
import { TableViewModel } from "./state.js";

const BASE = "";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing #${id}`);
  }
  return node as T;
}

function render(vm: TableViewModel): void {
  el("table-area").innerHTML = tableHtml(vm);
  el("actions").innerHTML = actionButtonsHtml(vm);
  el("history").innerHTML = historyHtml(vm.view);
  el("banner-area").innerHTML = bannerHtml(vm);
  const history = el("history");
  history.scrollTop = history.scrollHeight;
}

async function loadAgents(): Promise<void> {
  const select = el<HTMLSelectElement>("agent-select");
  const agents = await api.listAgents(BASE);
  select.innerHTML = agents
    .map((a) => `<option value="${a.id}">${a.id} (${a.kind})</option>`)
    .join("");
}

function main(): void {
  const controller = new TableController(BASE, render);

  el("deal").addEventListener("click", () => {
    const checkpoint = el<HTMLSelectElement>("agent-select").value;
    const seat = Number(el<HTMLSelectElement>("seat-select").value);
    void controller.startGame({ checkpoint, human_seat: seat });
  });

  el("actions").addEventListener("click", (ev) => {
    const target = ev.target as HTMLElement;
    const kind = target.dataset?.kind;
    if (kind) {
      void controller.submitAction(kind);
    }
  });

  el("banner-area").addEventListener("click", (ev) => {
    const target = ev.target as HTMLElement;
    if (target.id === "retry") {
      void controller.retry();
    } else if (target.id === "dismiss") {
      void controller.refresh();
    }
  });

  void loadAgents().catch((err) => {
    el("banner-area").innerHTML =
      `<div class="banner">cannot reach the server: ${String(err)}</div>`;
  });
}

main();
