import type { CardInfo, PublicState } from "../src/api.js";

export function card(text: string): CardInfo {
  const ranks = "23456789TJQKA";
  const suits = "shdc";
  return { rank: ranks.indexOf(text[0]), suit: suits.indexOf(text[1]), text };
}

export function baseView(overrides: Partial<PublicState> = {}): PublicState {
  return {
    session: "sess1",
    game_over: false,
    hand_index: 1,
    street: "PREFLOP",
    board: [],
    hole: [card("As"), card("Kd")],
    pot: 15,
    stacks: { human: 95, agent: 90 },
    to_call: 5,
    to_act: "human",
    legal_actions: [
      { kind: "FOLD", chips: 0 },
      { kind: "CHECK_CALL", chips: 5 },
      { kind: "RAISE_HALF_POT", chips: 15 },
      { kind: "RAISE_POT", chips: 25 },
      { kind: "ALL_IN", chips: 95 },
    ],
    history: [],
    last_hand: null,
    hands_completed: 0,
    human_total_delta: 0,
    big_blind: 10,
    ...overrides,
  };
}
