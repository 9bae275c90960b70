"""HTTP play service: human-vs-checkpoint sessions over a JSON API.

Sessions are in-memory with idle expiry.  The agent answers with its
average policy by default; a session flag enables the full training
mixture.  Opponent hole cards never appear in a payload before showdown.
"""

from __future__ import annotations

import os
import secrets
import threading
import time
from dataclasses import dataclass, field
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from . import arena, engine
from .cards import Card
from .engine import Action, ActionKind, GameConfig

SESSION_IDLE_SECONDS = 30 * 60


def card_json(c: Card) -> dict:
    return {"rank": c.rank, "suit": c.suit, "text": str(c)}


@dataclass
class HandOutcome:
    deltas: tuple[int, int]
    showdown: bool
    winning_class: Optional[int]
    revealed: Optional[dict]
    board: list[dict]
    hand_index: int


@dataclass
class Session:
    id: str
    state: engine.GameState
    agent: arena.CheckpointPlayer
    human_seat: int
    created: float = field(default_factory=time.time)
    last_active: float = field(default_factory=time.time)
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)
    busy: bool = False
    log: list[str] = field(default_factory=list)
    last_outcome: Optional[HandOutcome] = None
    game_over: bool = False
    final_stacks: Optional[tuple[int, int]] = None
    hand_results: list[tuple[int, int]] = field(default_factory=list)
    hands_done: int = 0


class CreateSessionRequest(BaseModel):
    checkpoint: str = Field(description="agent id from /api/agents")
    human_seat: int = Field(default=0, ge=0, le=1)
    starting_stack: int = Field(default=100, ge=20)
    small_blind: int = Field(default=5, ge=1)
    max_hands: int = Field(default=20, ge=1)
    seed: Optional[int] = None
    use_mixture: bool = False


class ActionRequest(BaseModel):
    kind: str


def error(status: int, code: str, message: str) -> HTTPException:
    return HTTPException(status_code=status, detail={"code": code, "message": message})


class AgentRegistry:
    """Checkpoint files plus the built-in scripted baselines."""

    BASELINES = ("call", "random", "heuristic-mc", "always-fold")

    def __init__(self, checkpoint_dir: Optional[str] = None):
        self.checkpoint_dir = checkpoint_dir

    def list_agents(self) -> list[dict]:
        out = [{"id": b, "kind": "baseline"} for b in self.BASELINES]
        if self.checkpoint_dir and os.path.isdir(self.checkpoint_dir):
            for name in sorted(os.listdir(self.checkpoint_dir)):
                if name.endswith((".bin", ".ckpt")):
                    out.append({"id": name, "kind": "checkpoint"})
        return out

    def build(self, agent_id: str, seed: int, use_mixture: bool):
        if agent_id in self.BASELINES:
            return arena.baseline_player(agent_id, seed=seed)
        if self.checkpoint_dir:
            path = os.path.join(self.checkpoint_dir, agent_id)
            if os.path.isfile(path):
                return arena.checkpoint_player(path, seed=seed, use_mixture=use_mixture)
        raise error(404, "unknown_checkpoint", f"no agent {agent_id!r}")


def public_view(session: Session) -> dict:
    """Everything the human may see; opponent holes only after showdown."""
    if session.game_over:
        legal: list[dict] = []
        to_act = None
        board = [card_json(c) for c in session.state.board]
        hole = [card_json(c) for c in session.state.holes[session.human_seat]]
        street = session.state.street.name
        pot = 0
        stacks = session.final_stacks or (0, 0)
        hand_index = session.state.hand_index
        to_call = 0
    else:
        view = engine.player_view(session.state, session.human_seat)
        board = [card_json(c) for c in view.board]
        hole = [card_json(c) for c in view.hole]
        street = view.street.name
        pot = view.pot_total
        stacks = (
            session.state.stacks[session.human_seat],
            session.state.stacks[1 - session.human_seat],
        )
        to_act = "human" if session.state.to_act == session.human_seat else "agent"
        legal = [
            {"kind": a.kind.name, "chips": a.chips}
            for a in (view.legal if session.state.to_act == session.human_seat else [])
        ]
        hand_index = view.hand_index
        to_call = view.to_call

    last = None
    if session.last_outcome is not None:
        o = session.last_outcome
        last = {
            "hand_index": o.hand_index,
            "human_delta": o.deltas[session.human_seat],
            "agent_delta": o.deltas[1 - session.human_seat],
            "showdown": o.showdown,
            "winning_class": o.winning_class,
            "revealed": o.revealed,
            "board": o.board,
        }
    return {
        "session": session.id,
        "game_over": session.game_over,
        "hand_index": hand_index,
        "street": street,
        "board": board,
        "hole": hole,
        "pot": pot,
        "stacks": {"human": stacks[0], "agent": stacks[1]},
        "to_call": to_call,
        "to_act": to_act,
        "legal_actions": legal,
        "history": list(session.log[-40:]),
        "last_hand": last,
        "hands_completed": session.hands_done,
        "human_total_delta": sum(d[session.human_seat] for d in session.hand_results),
        "big_blind": session.state.config.big_blind,
    }


def build_app(checkpoint_dir: Optional[str] = None, static_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="nfspgp poker service")
    registry = AgentRegistry(checkpoint_dir)
    sessions: dict[str, Session] = {}
    sessions_lock = threading.Lock()
    app.state.sessions = sessions  # introspection for tests/ops

    def prune() -> None:
        cutoff = time.time() - SESSION_IDLE_SECONDS
        with sessions_lock:
            for sid in [s for s, sess in sessions.items() if sess.last_active < cutoff]:
                del sessions[sid]

    def get_session(sid: str) -> Session:
        with sessions_lock:
            sess = sessions.get(sid)
        if sess is None:
            raise error(404, "unknown_session", f"no session {sid!r}")
        return sess

    def run_agent_turns(sess: Session) -> None:
        """Let the agent act until it's the human's turn or the game ends."""
        agent_seat = 1 - sess.human_seat
        while not sess.state.game_over and sess.state.to_act == agent_seat:
            view = engine.player_view(sess.state, agent_seat)
            action = sess.agent.act(view)
            assert any(a.kind == action.kind for a in view.legal)
            pre_state = sess.state
            hand_index = pre_state.hand_index
            sess.state, result, over = engine.apply_action(sess.state, action)
            sess.log.append(f"{hand_index},{pre_state.street.name},agent,{action.kind.name},{action.chips}")
            if result is not None:
                _note_outcome(sess, pre_state, result, hand_index)
            if over:
                sess.game_over = True
                sess.final_stacks = (
                    sess.state.stacks[sess.human_seat],
                    sess.state.stacks[1 - sess.human_seat],
                )

    def _note_outcome(sess: Session, pre_state, result: engine.HandResult, hand_index: int) -> None:
        revealed = None
        if result.showdown:
            holes = pre_state.holes
            revealed = {
                "human": [card_json(c) for c in holes[sess.human_seat]],
                "agent": [card_json(c) for c in holes[1 - sess.human_seat]],
            }
        sess.last_outcome = HandOutcome(
            deltas=result.deltas,
            showdown=result.showdown,
            winning_class=result.winning_class,
            revealed=revealed,
            board=[card_json(c) for c in pre_state.hand_deck[4:9]] if result.showdown else [card_json(c) for c in pre_state.board],
            hand_index=hand_index,
        )
        sess.hand_results.append(result.deltas)
        sess.hands_done += 1
        sess.log.append(
            f"{hand_index},result,{result.deltas[0]},{result.deltas[1]},"
            f"{'showdown' if result.showdown else 'fold'}"
        )

    @app.get("/api/agents")
    def list_agents():
        return {"agents": registry.list_agents()}

    @app.post("/api/sessions", status_code=201)
    def create_session(req: CreateSessionRequest):
        prune()
        try:
            config = GameConfig(
                starting_stack=req.starting_stack,
                small_blind=req.small_blind,
                max_hands_per_game=req.max_hands,
                seed=req.seed if req.seed is not None else secrets.randbits(32),
            )
        except ValueError as exc:
            raise error(400, "invalid_config", str(exc))
        agent = registry.build(req.checkpoint, seed=config.seed ^ 0x5EED, use_mixture=req.use_mixture)
        agent.begin_game(config.seed)
        sid = secrets.token_urlsafe(12)
        sess = Session(
            id=sid,
            state=engine.new_game(config),
            agent=agent,
            human_seat=req.human_seat,
        )
        run_agent_turns(sess)
        with sessions_lock:
            sessions[sid] = sess
        return public_view(sess)

    @app.get("/api/sessions/{sid}")
    def get_state(sid: str):
        sess = get_session(sid)
        return public_view(sess)

    @app.post("/api/sessions/{sid}/actions")
    def post_action(sid: str, req: ActionRequest):
        sess = get_session(sid)
        if not sess.lock.acquire(blocking=False):
            raise error(409, "busy", "another action is in flight for this session")
        try:
            sess.last_active = time.time()
            if sess.game_over:
                raise error(409, "game_over", "the game has ended; start a new session")
            if sess.state.to_act != sess.human_seat:
                raise error(409, "not_your_turn", "the agent is to act")
            try:
                kind = ActionKind[req.kind]
            except KeyError:
                raise error(400, "bad_action", f"unknown action kind {req.kind!r}")
            view = engine.player_view(sess.state, sess.human_seat)
            legal = {a.kind for a in view.legal}
            if kind not in legal:
                raise error(
                    400,
                    "illegal_action",
                    f"{kind.name} not legal now; legal: {sorted(a.name for a in legal)}",
                )
            pre_state = sess.state
            hand_index = pre_state.hand_index
            chips = next(a.chips for a in view.legal if a.kind == kind)
            sess.state, result, over = engine.apply_action(sess.state, Action(kind))
            sess.log.append(f"{hand_index},{pre_state.street.name},human,{kind.name},{chips}")
            if result is not None:
                _note_outcome(sess, pre_state, result, hand_index)
            if over:
                sess.game_over = True
                sess.final_stacks = (
                    sess.state.stacks[sess.human_seat],
                    sess.state.stacks[1 - sess.human_seat],
                )
            else:
                run_agent_turns(sess)
            return public_view(sess)
        finally:
            sess.lock.release()

    if static_dir and os.path.isdir(static_dir):
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="webui")

    return app


def run_server(
    checkpoint_dir: Optional[str],
    static_dir: Optional[str],
    host: str = "127.0.0.1",
    port: int = 8000,
) -> None:
    import uvicorn

    host = os.environ.get("NFSPGP_HOST", host)
    port = int(os.environ.get("NFSPGP_PORT", port))
    uvicorn.run(build_app(checkpoint_dir, static_dir), host=host, port=port)
