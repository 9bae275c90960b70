"""Self-play training orchestration.

Two symmetric agents play complete games against each other.  Per episode
each draws a policy mode; every decision stores a transition, best-response
episodes also store behavior tuples; every `update_every` own steps past
the replay threshold an agent takes one Q batch and one policy batch;
target networks sync on an update cadence.  Fully deterministic per seed.
"""

from __future__ import annotations

import csv
import os
import time
from dataclasses import dataclass, field, fields as dataclass_fields
from typing import Optional

import numpy as np

from . import neural
from .engine import GameConfig
from .envs import HoldemEnv, KuhnEnv
from .memory import BehaviorTuple, CircularBuffer, ReservoirBuffer, Transition, sample_batch
from .neural import AdamState, Network, NetworkSpec, sgd_step, sync_target
from .strategy import (
    MixtureConfig,
    PolicyMode,
    average_pi,
    choose_policy_mode,
    gradient_play_s,
    greedy_beta,
    masked_softmax,
)


@dataclass
class TrainerConfig:
    game: str = "holdem"  # holdem | kuhn
    eta: float = 0.1
    rho: float = 0.92
    eps_start: float = 0.9
    eps_end: float = 0.02
    eps_decay_steps: int = 100_000
    q_ext_mode: str = "tiled"
    gamma: float = 1.0
    batch_size: int = 256
    update_every: int = 64
    target_sync_every: int = 1000
    m_rl_capacity: int = 200_000
    m_sl_capacity: int = 1_000_000
    min_replay: int = 1000
    lr_q: float = 1e-4
    lr_pi: float = 1e-3
    total_episodes: int = 1000
    max_seconds: float = 0.0  # 0 = no wall-clock cap
    seed: int = 0
    net: str = "default"  # default | small | explicit spec text
    mc_samples: int = 200
    metrics_every: int = 500
    checkpoint_every: int = 0  # episodes; 0 = final only
    starting_stack: int = 100
    small_blind: int = 5
    max_hands_per_game: int = 20

    def __post_init__(self) -> None:
        if self.game not in ("holdem", "kuhn"):
            raise ValueError("game must be 'holdem' or 'kuhn'")
        for name in (
            "batch_size",
            "update_every",
            "target_sync_every",
            "m_rl_capacity",
            "m_sl_capacity",
            "min_replay",
            "metrics_every",
        ):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.total_episodes < 0:
            raise ValueError("total_episodes must be >= 0")
        if self.batch_size > self.m_rl_capacity:
            raise ValueError("batch_size must not exceed m_rl_capacity")

    def mixture(self) -> MixtureConfig:
        return MixtureConfig(
            eta=self.eta,
            rho=self.rho,
            eps_start=self.eps_start,
            eps_end=self.eps_end,
            eps_decay_steps=self.eps_decay_steps,
            q_ext_mode=self.q_ext_mode,
        )

    def network_spec(self, env) -> NetworkSpec:
        if self.net == "default":
            if self.game == "kuhn":
                return neural.dense_spec(env.obs_shape[0], [64, 64], env.num_actions)
            return neural.holdem_spec(env.num_actions)
        if self.net == "small":
            if self.game == "kuhn":
                return neural.dense_spec(env.obs_shape[0], [32], env.num_actions)
            return neural.small_holdem_spec(env.num_actions)
        return NetworkSpec.from_text(self.net)


_BOOL_FIELDS: set[str] = set()


def parse_config(text: str) -> TrainerConfig:
    """Plain `key = value` lines; '#' comments; unknown keys rejected."""
    known = {f.name: f.type for f in dataclass_fields(TrainerConfig)}
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value'")
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if key not in known:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
        if key in ("game", "net", "q_ext_mode"):
            values[key] = val
        elif key in ("eta", "rho", "eps_start", "eps_end", "gamma", "lr_q", "lr_pi", "max_seconds"):
            values[key] = float(val)
        else:
            values[key] = int(val)
    return TrainerConfig(**values)


@dataclass
class _Pending:
    obs: np.ndarray
    action: int
    reward: float = 0.0


class AgentInstance:
    """One self-play agent: Q, target Q, average-policy net, two memories."""

    def __init__(self, name: str, spec: NetworkSpec, config: TrainerConfig, seeds):
        self.name = name
        self.q = Network(spec, seed=seeds[0])
        self.q_target = Network(spec, seed=seeds[0])
        sync_target(self.q, self.q_target)
        self.pi = Network(spec, seed=seeds[1])
        self.pi_opponent: Optional[Network] = None  # wired to the other agent's pi
        self.m_rl = CircularBuffer(config.m_rl_capacity)
        self.m_sl = ReservoirBuffer(config.m_sl_capacity, seed=seeds[2])
        self.adam_q = AdamState(self.q)
        self.adam_pi = AdamState(self.pi)
        self.steps = 0
        self.q_updates = 0
        self.pi_updates = 0
        self.syncs = 0
        self.mode = PolicyMode.AVERAGE
        self.pending: Optional[_Pending] = None
        self.last_q_loss = 0.0
        self.last_pi_loss = 0.0

    def act(self, obs: np.ndarray, legal_mask: np.ndarray, mixture: MixtureConfig, rng) -> int:
        if self.mode is PolicyMode.AVERAGE:
            return average_pi(self.pi.forward(obs), legal_mask, rng)
        if self.mode is PolicyMode.BEST_RESPONSE:
            eps = mixture.epsilon_at(self.steps)
            return greedy_beta(self.q.forward(obs), legal_mask, eps, rng)
        assert self.pi_opponent is not None
        pi_probs = masked_softmax(self.pi.forward(obs), legal_mask)
        opp_probs = masked_softmax(self.pi_opponent.forward(obs), legal_mask)
        qvals = self.q.forward(obs)
        return gradient_play_s(
            pi_probs, qvals, opp_probs, legal_mask, rng, q_ext_mode=mixture.q_ext_mode
        )


def training_step(agent: AgentInstance, config: TrainerConfig, rng) -> tuple[float, float]:
    """One gated Q update and one gated policy update; returns the losses."""
    q_loss = agent.last_q_loss
    pi_loss = agent.last_pi_loss
    if len(agent.m_rl) >= config.min_replay:
        batch = sample_batch(agent.m_rl, config.batch_size, rng)
        s = np.stack([t.s for t in batch])
        a = np.array([t.a for t in batch])
        r = np.array([t.r for t in batch])
        s_next = np.stack([t.s_next for t in batch])
        terminal = np.array([t.terminal for t in batch])
        q_loss, grads = neural.q_loss_batch(
            agent.q, agent.q_target, s, a, r, s_next, terminal, gamma=config.gamma
        )
        sgd_step(agent.q, grads, config.lr_q, agent.adam_q)
        agent.q_updates += 1
        if agent.q_updates % config.target_sync_every == 0:
            sync_target(agent.q, agent.q_target)
            agent.syncs += 1
    if len(agent.m_sl) > 0:
        batch = sample_batch(agent.m_sl, config.batch_size, rng)
        s = np.stack([t.s for t in batch])
        a = np.array([t.a for t in batch])
        pi_loss, grads = neural.policy_loss_batch(agent.pi, s, a)
        sgd_step(agent.pi, grads, config.lr_pi, agent.adam_pi)
        agent.pi_updates += 1
    agent.last_q_loss = q_loss
    agent.last_pi_loss = pi_loss
    return q_loss, pi_loss


class NashGapTracker:
    """Windowed |difference of the two players' aggregate winnings|."""

    def __init__(self, window: int = 500):
        if window < 1:
            raise ValueError("window must be >= 1")
        self.window = window
        self._buf0: list[float] = []
        self._buf1: list[float] = []
        self.games = 0
        self.series: list[float] = []

    def update(self, mbb0: float, mbb1: float) -> Optional[float]:
        """Record one game's per-player rates; emits a point every `window` games."""
        self._buf0.append(mbb0)
        self._buf1.append(mbb1)
        if len(self._buf0) > self.window:
            self._buf0.pop(0)
            self._buf1.pop(0)
        self.games += 1
        if self.games % self.window == 0:
            gap = abs(
                sum(self._buf0) / len(self._buf0) - sum(self._buf1) / len(self._buf1)
            )
            self.series.append(gap)
            return gap
        return None


@dataclass
class TrainingResult:
    episodes: int
    hands: int
    checkpoint_path: str
    metrics_path: str
    gap_series: list[float]
    agents: list[AgentInstance]
    wall_seconds: float


def _make_env(config: TrainerConfig):
    if config.game == "kuhn":
        return KuhnEnv()
    game_cfg = GameConfig(
        starting_stack=config.starting_stack,
        small_blind=config.small_blind,
        max_hands_per_game=config.max_hands_per_game,
        seed=0,
    )
    return HoldemEnv(game_cfg, mc_samples=config.mc_samples)


def save_training_checkpoint(agents, config: TrainerConfig, counters: dict, path: str) -> None:
    nets = {}
    for i, agent in enumerate(agents):
        nets[f"p{i}_q"] = agent.q
        nets[f"p{i}_q_target"] = agent.q_target
        nets[f"p{i}_pi"] = agent.pi
    echo = {f.name: getattr(config, f.name) for f in dataclass_fields(TrainerConfig)}
    neural.save_checkpoint(nets, {**counters, "config": echo}, path)


def _build_agents(config: TrainerConfig, spec: NetworkSpec, seeds) -> list[AgentInstance]:
    agents = [
        AgentInstance("p0", spec, config, seeds=(int(seeds[0]), int(seeds[1]), int(seeds[2]))),
        AgentInstance("p1", spec, config, seeds=(int(seeds[3]), int(seeds[4]), int(seeds[5]))),
    ]
    agents[0].pi_opponent = agents[1].pi
    agents[1].pi_opponent = agents[0].pi
    return agents


def run_training(
    config: TrainerConfig, out_dir: str, on_metrics=None, _agents=None
) -> TrainingResult:
    """Run the self-play loop for total_episodes (or until max_seconds)."""
    os.makedirs(out_dir, exist_ok=True)
    metrics_path = os.path.join(out_dir, "metrics.csv")
    checkpoint_path = os.path.join(out_dir, "checkpoint.bin")

    env = _make_env(config)
    mixture = config.mixture()
    spec = config.network_spec(env)

    root = np.random.SeedSequence(config.seed)
    seeds = root.generate_state(12)
    agents = _agents if _agents is not None else _build_agents(config, spec, seeds)
    rng_mode = np.random.default_rng(int(seeds[6]))
    rng_act = [np.random.default_rng(int(seeds[7])), np.random.default_rng(int(seeds[8]))]
    rng_train = [np.random.default_rng(int(seeds[9])), np.random.default_rng(int(seeds[10]))]

    tracker = NashGapTracker(window=config.metrics_every)
    total_hands = 0
    start = time.time()
    episodes_run = 0

    metrics_file = open(metrics_path, "w", newline="")
    writer = csv.writer(metrics_file)
    writer.writerow(
        ["episode", "hands", "gap_mbbh", "loss_q_p1", "loss_pi_p1", "loss_q_p2", "loss_pi_p2", "eps_explore"]
    )

    try:
        for episode in range(1, config.total_episodes + 1):
            if config.max_seconds > 0 and time.time() - start > config.max_seconds:
                break
            for agent in agents:
                agent.mode = choose_policy_mode(mixture, rng_mode)
                assert agent.pi_opponent is agents[1 - agents.index(agent)].pi
            env.new_episode(_episode_seed(config.seed, episode))

            while not env.done:
                player = env.current_player()
                agent = agents[player]
                obs = env.observe()
                if agent.pending is not None:
                    agent.m_rl.push(
                        Transition(
                            s=agent.pending.obs,
                            a=agent.pending.action,
                            r=agent.pending.reward,
                            s_next=obs,
                            terminal=False,
                        )
                    )
                mask = env.legal_mask()
                action = agent.act(obs, mask, mixture, rng_act[player])
                agent.pending = _Pending(obs=obs, action=action)
                if agent.mode is PolicyMode.BEST_RESPONSE:
                    agent.m_sl.insert(BehaviorTuple(s=obs, a=action))
                outcome = env.step(action)
                for i, agent_i in enumerate(agents):
                    if outcome.rewards[i] != 0.0 and agent_i.pending is not None:
                        agent_i.pending.reward += outcome.rewards[i]
                agent.steps += 1
                if agent.steps % config.update_every == 0:
                    training_step(agent, config, rng_train[player])

            terminal_obs = np.zeros(env.obs_shape, dtype=np.float32)
            for agent in agents:
                if agent.pending is not None:
                    agent.m_rl.push(
                        Transition(
                            s=agent.pending.obs,
                            a=agent.pending.action,
                            r=agent.pending.reward,
                            s_next=terminal_obs,
                            terminal=True,
                        )
                    )
                    agent.pending = None

            episodes_run = episode
            total_hands += env.hands_played
            mbb0, mbb1 = env.game_mbb()
            gap = tracker.update(mbb0, mbb1)
            if gap is not None:
                row = [
                    episode,
                    total_hands,
                    f"{gap:.6f}",
                    f"{agents[0].last_q_loss:.8f}",
                    f"{agents[0].last_pi_loss:.8f}",
                    f"{agents[1].last_q_loss:.8f}",
                    f"{agents[1].last_pi_loss:.8f}",
                    f"{mixture.epsilon_at(agents[0].steps):.6f}",
                ]
                writer.writerow(row)
                metrics_file.flush()
                if on_metrics is not None:
                    on_metrics(episode, gap, agents)
            if config.checkpoint_every and episode % config.checkpoint_every == 0:
                save_training_checkpoint(
                    agents, config, _counters(agents, episodes_run, total_hands), checkpoint_path
                )
    finally:
        metrics_file.close()

    save_training_checkpoint(
        agents, config, _counters(agents, episodes_run, total_hands), checkpoint_path
    )
    return TrainingResult(
        episodes=episodes_run,
        hands=total_hands,
        checkpoint_path=checkpoint_path,
        metrics_path=metrics_path,
        gap_series=tracker.series,
        agents=agents,
        wall_seconds=time.time() - start,
    )


def _episode_seed(seed: int, episode: int) -> int:
    return int(np.random.SeedSequence([seed, 1_000_000 + episode]).generate_state(1)[0])


def _counters(agents, episodes: int, hands: int) -> dict:
    out = {"episodes": episodes, "hands": hands}
    for i, agent in enumerate(agents):
        out[f"p{i}_steps"] = agent.steps
        out[f"p{i}_q_updates"] = agent.q_updates
        out[f"p{i}_pi_updates"] = agent.pi_updates
        out[f"p{i}_syncs"] = agent.syncs
    return out


def resume_training(
    checkpoint_path: str, out_dir: str, extra_episodes: Optional[int] = None
) -> TrainingResult:
    """Continue training from a saved checkpoint (memories start fresh)."""
    ck = neural.load_checkpoint(checkpoint_path)
    cfg_echo = dict(ck.counters.get("config", {}))
    if not cfg_echo:
        raise ValueError("checkpoint carries no config echo; cannot resume")
    if extra_episodes is not None:
        cfg_echo["total_episodes"] = extra_episodes
    config = TrainerConfig(**cfg_echo)
    env = _make_env(config)
    spec = config.network_spec(env)

    seeds = np.random.SeedSequence(config.seed).generate_state(12)
    agents = _build_agents(config, spec, seeds)
    for i, agent in enumerate(agents):
        agent.q.set_params([p.copy() for p in ck.nets[f"p{i}_q"].params])
        agent.q_target.set_params([p.copy() for p in ck.nets[f"p{i}_q_target"].params])
        agent.pi.set_params([p.copy() for p in ck.nets[f"p{i}_pi"].params])
        agent.steps = int(ck.counters.get(f"p{i}_steps", 0))
        agent.q_updates = int(ck.counters.get(f"p{i}_q_updates", 0))
        agent.pi_updates = int(ck.counters.get(f"p{i}_pi_updates", 0))
    return run_training(config, out_dir, _agents=agents)
