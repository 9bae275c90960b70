// Typed client for the poker session API.

export interface CardInfo {
  rank: number;
  suit: number;
  text: string;
}

export interface LegalAction {
  kind: string;
  chips: number;
}

export interface RevealedHoles {
  human: CardInfo[] | null;
  agent: CardInfo[] | null;
}

export interface LastHand {
  hand_index: number;
  human_delta: number;
  agent_delta: number;
  showdown: boolean;
  winning_class: number | null;
  revealed: RevealedHoles | null;
  board: CardInfo[];
}

export interface PublicState {
  session: string;
  game_over: boolean;
  hand_index: number;
  street: string;
  board: CardInfo[];
  hole: CardInfo[];
  pot: number;
  stacks: { human: number; agent: number };
  to_call: number;
  to_act: "human" | "agent" | null;
  legal_actions: LegalAction[];
  history: string[];
  last_hand: LastHand | null;
  hands_completed: number;
  human_total_delta: number;
  big_blind: number;
}

export interface AgentEntry {
  id: string;
  kind: string;
}

export interface SessionOptions {
  checkpoint: string;
  human_seat?: number;
  starting_stack?: number;
  small_blind?: number;
  max_hands?: number;
  seed?: number;
  use_mixture?: boolean;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
  ) {
    super(message);
  }
}

async function parseError(res: Response): Promise<ApiError> {
  let code = "http_error";
  let message = `HTTP ${res.status}`;
  try {
    const body = await res.json();
    if (body && body.detail) {
      code = body.detail.code ?? code;
      message = body.detail.message ?? message;
    }
  } catch {
    // non-JSON error body; keep defaults
  }
  return new ApiError(res.status, code, message);
}

async function expectJson<T>(res: Response): Promise<T> {
  if (!res.ok) {
    throw await parseError(res);
  }
  return (await res.json()) as T;
}

export async function listAgents(base: string): Promise<AgentEntry[]> {
  const res = await fetch(`${base}/api/agents`);
  const body = await expectJson<{ agents: AgentEntry[] }>(res);
  return body.agents;
}

export async function createSession(
  base: string,
  opts: SessionOptions,
): Promise<PublicState> {
  const res = await fetch(`${base}/api/sessions`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(opts),
  });
  return expectJson<PublicState>(res);
}

export async function getState(base: string, sid: string): Promise<PublicState> {
  const res = await fetch(`${base}/api/sessions/${sid}`);
  return expectJson<PublicState>(res);
}

export async function postAction(
  base: string,
  sid: string,
  kind: string,
): Promise<PublicState> {
  const res = await fetch(`${base}/api/sessions/${sid}/actions`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ kind }),
  });
  return expectJson<PublicState>(res);
}
