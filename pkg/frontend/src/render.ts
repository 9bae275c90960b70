// Pure HTML builders for the table; main.ts owns the actual DOM writes.

import type { CardInfo, PublicState } from "./api.js";
import { buttonsEnabled, TableViewModel } from "./state.js";
import { scoreLine } from "./score.js";

const SUIT_GLYPHS = ["♠", "♥", "♦", "♣"];
const SUIT_CLASSES = ["black", "red", "red", "black"];
const RANK_CHARS = "23456789TJQKA";

export function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function cardHtml(card: CardInfo): string {
  const glyph = SUIT_GLYPHS[card.suit] ?? "?";
  const cls = SUIT_CLASSES[card.suit] ?? "black";
  const rank = RANK_CHARS[card.rank] ?? "?";
  return `<span class="card ${cls}">${rank}${glyph}</span>`;
}

export function cardBackHtml(): string {
  return `<span class="card back">&#x1F0A0;</span>`;
}

function cardsRow(cards: CardInfo[]): string {
  return cards.map(cardHtml).join("");
}

export function assertNoOpponentLeak(html: string, view: PublicState): void {
  // Pre-showdown the payload carries no agent cards, so the only card texts
  // that may appear are the human hole, the board, and showdown reveals.
  const allowed = new Set<string>();
  for (const c of view.hole) allowed.add(c.text);
  for (const c of view.board) allowed.add(c.text);
  if (view.last_hand?.revealed) {
    for (const c of view.last_hand.revealed.human ?? []) allowed.add(c.text);
    for (const c of view.last_hand.revealed.agent ?? []) allowed.add(c.text);
  }
  for (const c of view.last_hand?.board ?? []) allowed.add(c.text);
  const rendered = html.match(/\b[2-9TJQKA][shdc]\b/g) ?? [];
  for (const text of rendered) {
    if (!allowed.has(text)) {
      throw new Error(`rendered a card the payload never revealed: ${text}`);
    }
  }
}

export function agentHoleHtml(view: PublicState): string {
  if (view.last_hand?.showdown && view.last_hand.revealed?.agent
      && view.last_hand.hand_index === view.hand_index) {
    return cardsRow(view.last_hand.revealed.agent);
  }
  return cardBackHtml() + cardBackHtml();
}

export function actionButtonsHtml(vm: TableViewModel): string {
  const view = vm.view;
  if (view === null) {
    return "";
  }
  const enabled = buttonsEnabled(vm);
  return view.legal_actions
    .map((a) => {
      const label = a.chips > 0 ? `${prettyKind(a.kind)} (${a.chips})` : prettyKind(a.kind);
      const attr = enabled ? "" : " disabled";
      return `<button class="action" data-kind="${esc(a.kind)}"${attr}>${esc(label)}</button>`;
    })
    .join("");
}

function prettyKind(kind: string): string {
  switch (kind) {
    case "FOLD":
      return "Fold";
    case "CHECK_CALL":
      return "Check / Call";
    case "RAISE_HALF_POT":
      return "Raise ½ pot";
    case "RAISE_POT":
      return "Raise pot";
    case "ALL_IN":
      return "All in";
    default:
      return kind;
  }
}

export function lastHandHtml(view: PublicState): string {
  const last = view.last_hand;
  if (!last) {
    return "";
  }
  const outcome = last.human_delta > 0 ? "won" : last.human_delta < 0 ? "lost" : "split";
  const chips = Math.abs(last.human_delta);
  const how = last.showdown ? "at showdown" : "on a fold";
  let reveal = "";
  if (last.showdown && last.revealed?.agent) {
    reveal = `<div class="reveal">agent held ${cardsRow(last.revealed.agent)}</div>`;
  }
  return `<div class="result">hand ${last.hand_index}: you ${outcome} ${chips} chips ${how}${reveal}</div>`;
}

export function tableHtml(vm: TableViewModel): string {
  const view = vm.view;
  if (view === null) {
    return `<div class="empty">Pick an opponent and deal.</div>`;
  }
  const turn = view.game_over
    ? "game over"
    : view.to_act === "human"
      ? "your turn"
      : "agent thinking…";
  const toCall = view.to_call > 0 ? ` &middot; ${view.to_call} to call` : "";
  const html = `
  <div class="seat agent-seat">
    <div class="label">agent &middot; stack ${view.stacks.agent}</div>
    <div class="cards">${agentHoleHtml(view)}</div>
  </div>
  <div class="board">
    <div class="street">${esc(view.street)}${toCall}</div>
    <div class="cards">${cardsRow(view.board)}</div>
    <div class="pot">pot ${view.pot}</div>
  </div>
  <div class="seat human-seat">
    <div class="label">you &middot; stack ${view.stacks.human}</div>
    <div class="cards">${cardsRow(view.hole)}</div>
  </div>
  <div class="turn">${turn}</div>
  ${lastHandHtml(view)}
  <div class="score">${esc(scoreLine(vm.score))}</div>`;
  assertNoOpponentLeak(html, view);
  return html;
}

export function historyHtml(view: PublicState | null): string {
  if (!view) {
    return "";
  }
  return view.history.map((line) => `<div class="log-line">${esc(line)}</div>`).join("");
}

export function bannerHtml(vm: TableViewModel): string {
  if (!vm.error) {
    return "";
  }
  return `<div class="banner">${esc(vm.error)} <button id="retry">Retry</button>
  <button id="dismiss">Dismiss</button></div>`;
}
