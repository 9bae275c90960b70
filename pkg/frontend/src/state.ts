// Table view-model: server state + request bookkeeping, no DOM here.

import type { PublicState } from "./api.js";
import type { SessionScore } from "./score.js";

export interface TableViewModel {
  view: PublicState | null;
  pending: boolean;
  error: string | null;
  score: SessionScore;
}

export function newModel(): TableViewModel {
  return {
    view: null,
    pending: false,
    error: null,
    score: { hands: 0, totalDelta: 0, bigBlind: 10 },
  };
}

export function applyView(vm: TableViewModel, view: PublicState): TableViewModel {
  return {
    view,
    pending: false,
    error: null,
    score: {
      hands: view.hands_completed,
      totalDelta: view.human_total_delta,
      bigBlind: view.big_blind,
    },
  };
}

export function requestStarted(vm: TableViewModel): TableViewModel {
  return { ...vm, pending: true, error: null };
}

export function requestFailed(vm: TableViewModel, message: string): TableViewModel {
  return { ...vm, pending: false, error: message };
}

export function dismissError(vm: TableViewModel): TableViewModel {
  return { ...vm, error: null };
}

export function buttonsEnabled(vm: TableViewModel): boolean {
  return (
    vm.view !== null &&
    !vm.pending &&
    !vm.view.game_over &&
    vm.view.to_act === "human" &&
    vm.view.legal_actions.length > 0
  );
}

export function legalKinds(vm: TableViewModel): Set<string> {
  return new Set((vm.view?.legal_actions ?? []).map((a) => a.kind));
}
