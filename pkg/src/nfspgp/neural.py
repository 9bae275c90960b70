"""Minimal network stack with manual backpropagation.

Layer vocabulary: same-padded stride-1 convolution, 2x2 max-pooling, dense,
rectifier.  Data layout is NHWC.  Parameters default to float32; gradient
checks build float64 instances.  No autograd: each layer implements its own
backward pass, which is what the finite-difference acceptance check pins.
"""

from __future__ import annotations

import hashlib
import io
import json
import os
import struct
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

CHECKPOINT_MAGIC = b"NFSPGP01"


# ---------------------------------------------------------------------------
# Specs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NetworkSpec:
    """Input shape plus an ordered layer list.

    Layers are tuples: ("conv", out_channels, kernel), ("pool", window),
    ("dense", width), ("relu",), ("flatten",).
    """

    input_shape: tuple[int, ...]
    layers: tuple[tuple, ...]

    def to_text(self) -> str:
        toks = ["input:" + "x".join(str(d) for d in self.input_shape)]
        for layer in self.layers:
            if layer[0] == "conv":
                toks.append(f"conv:{layer[1]}x{layer[2]}")
            elif layer[0] == "pool":
                toks.append(f"pool:{layer[1]}")
            elif layer[0] == "dense":
                toks.append(f"dense:{layer[1]}")
            else:
                toks.append(layer[0])
        return " ".join(toks)

    @classmethod
    def from_text(cls, text: str) -> "NetworkSpec":
        toks = text.split()
        if not toks or not toks[0].startswith("input:"):
            raise ValueError(f"bad spec text: {text!r}")
        input_shape = tuple(int(d) for d in toks[0][6:].split("x"))
        layers: list[tuple] = []
        for tok in toks[1:]:
            if tok.startswith("conv:"):
                out_ch, k = tok[5:].split("x")
                layers.append(("conv", int(out_ch), int(k)))
            elif tok.startswith("pool:"):
                layers.append(("pool", int(tok[5:])))
            elif tok.startswith("dense:"):
                layers.append(("dense", int(tok[6:])))
            elif tok in ("relu", "flatten"):
                layers.append((tok,))
            else:
                raise ValueError(f"unknown layer token {tok!r}")
        return cls(input_shape=input_shape, layers=tuple(layers))

    def output_size(self) -> int:
        shape = self.input_shape
        for layer in self.layers:
            shape = _shape_after(shape, layer)
        if len(shape) != 1:
            raise ValueError("network must end in a flat vector")
        return shape[0]


def _shape_after(shape: tuple[int, ...], layer: tuple) -> tuple[int, ...]:
    kind = layer[0]
    if kind == "conv":
        if len(shape) != 3:
            raise ValueError("conv needs HxWxC input")
        return (shape[0], shape[1], layer[1])
    if kind == "pool":
        if len(shape) != 3:
            raise ValueError("pool needs HxWxC input")
        w = layer[1]
        return (shape[0] // w, shape[1] // w, shape[2])
    if kind == "flatten":
        return (int(np.prod(shape)),)
    if kind == "dense":
        if len(shape) != 1:
            raise ValueError("dense needs flat input (add flatten)")
        return (layer[1],)
    if kind == "relu":
        return shape
    raise ValueError(f"unknown layer kind {kind!r}")


def holdem_spec(m: int = 5) -> NetworkSpec:
    """Default hold'em head: 4 convolutions, 2 poolings, 1 hidden dense."""
    return NetworkSpec(
        input_shape=(17, 17, 9),
        layers=(
            ("conv", 32, 3),
            ("relu",),
            ("conv", 64, 3),
            ("relu",),
            ("pool", 2),
            ("conv", 64, 3),
            ("relu",),
            ("conv", 128, 3),
            ("relu",),
            ("pool", 2),
            ("flatten",),
            ("dense", 256),
            ("relu",),
            ("dense", m),
        ),
    )


def small_holdem_spec(m: int = 5) -> NetworkSpec:
    """Same topology with slim channels, for desk-scale training runs."""
    return NetworkSpec(
        input_shape=(17, 17, 9),
        layers=(
            ("conv", 8, 3),
            ("relu",),
            ("conv", 16, 3),
            ("relu",),
            ("pool", 2),
            ("conv", 16, 3),
            ("relu",),
            ("conv", 32, 3),
            ("relu",),
            ("pool", 2),
            ("flatten",),
            ("dense", 64),
            ("relu",),
            ("dense", m),
        ),
    )


def dense_spec(input_dim: int, hidden: Sequence[int], m: int) -> NetworkSpec:
    layers: list[tuple] = []
    for width in hidden:
        layers.append(("dense", width))
        layers.append(("relu",))
    layers.append(("dense", m))
    return NetworkSpec(input_shape=(input_dim,), layers=tuple(layers))


# ---------------------------------------------------------------------------
# Layers
# ---------------------------------------------------------------------------


class _Conv:
    """3x3-style same-padded stride-1 convolution via im2col."""

    def __init__(self, in_ch: int, out_ch: int, k: int, rng, dtype):
        fan_in = k * k * in_ch
        limit = np.sqrt(1.0 / fan_in)
        self.w = rng.uniform(-limit, limit, size=(fan_in, out_ch)).astype(dtype)
        self.b = np.zeros(out_ch, dtype=dtype)
        self.k = k
        self.in_ch = in_ch
        self._cache = None

    @property
    def params(self):
        return [self.w, self.b]

    def _im2col(self, x: np.ndarray) -> np.ndarray:
        n, h, w, c = x.shape
        k = self.k
        p = k // 2
        xp = np.pad(x, ((0, 0), (p, p), (p, p), (0, 0)))
        cols = np.empty((n, h, w, k * k, c), dtype=x.dtype)
        for i in range(k):
            for j in range(k):
                cols[:, :, :, i * k + j, :] = xp[:, i : i + h, j : j + w, :]
        return cols.reshape(n, h, w, k * k * c)

    def forward(self, x: np.ndarray, train: bool) -> np.ndarray:
        cols = self._im2col(x)
        out = cols @ self.w + self.b
        if train:
            self._cache = (x.shape, cols)
        return out

    def backward(self, dout: np.ndarray):
        (n, h, w, c), cols = self._cache
        k = self.k
        flat_cols = cols.reshape(-1, k * k * c)
        flat_dout = dout.reshape(-1, dout.shape[-1])
        dw = flat_cols.T @ flat_dout
        db = flat_dout.sum(axis=0)
        dcols = (flat_dout @ self.w.T).reshape(n, h, w, k * k, c)
        p = k // 2
        dxp = np.zeros((n, h + 2 * p, w + 2 * p, c), dtype=dout.dtype)
        for i in range(k):
            for j in range(k):
                dxp[:, i : i + h, j : j + w, :] += dcols[:, :, :, i * k + j, :]
        dx = dxp[:, p : p + h, p : p + w, :]
        return dx, [dw.astype(self.w.dtype), db.astype(self.b.dtype)]


class _MaxPool:
    def __init__(self, window: int):
        self.window = window
        self._cache = None

    params: list = []

    def forward(self, x: np.ndarray, train: bool) -> np.ndarray:
        n, h, w, c = x.shape
        v = self.window
        h2, w2 = h // v, w // v
        xc = x[:, : h2 * v, : w2 * v, :]
        windows = xc.reshape(n, h2, v, w2, v, c).transpose(0, 1, 3, 2, 4, 5)
        windows = windows.reshape(n, h2, w2, v * v, c)
        idx = windows.argmax(axis=3)
        out = np.take_along_axis(windows, idx[:, :, :, None, :], axis=3)[:, :, :, 0, :]
        if train:
            self._cache = (x.shape, idx)
        return out

    def backward(self, dout: np.ndarray):
        (n, h, w, c), idx = self._cache
        v = self.window
        h2, w2 = h // v, w // v
        dwin = np.zeros((n, h2, w2, v * v, c), dtype=dout.dtype)
        np.put_along_axis(dwin, idx[:, :, :, None, :], dout[:, :, :, None, :], axis=3)
        dx = np.zeros((n, h, w, c), dtype=dout.dtype)
        dx[:, : h2 * v, : w2 * v, :] = (
            dwin.reshape(n, h2, w2, v, v, c).transpose(0, 1, 3, 2, 4, 5).reshape(n, h2 * v, w2 * v, c)
        )
        return dx, []


class _ReLU:
    def __init__(self):
        self._cache = None

    params: list = []

    def forward(self, x: np.ndarray, train: bool) -> np.ndarray:
        out = np.maximum(x, 0)
        if train:
            self._cache = x > 0
        return out

    def backward(self, dout: np.ndarray):
        return dout * self._cache, []


class _Flatten:
    def __init__(self):
        self._cache = None

    params: list = []

    def forward(self, x: np.ndarray, train: bool) -> np.ndarray:
        if train:
            self._cache = x.shape
        return x.reshape(x.shape[0], -1)

    def backward(self, dout: np.ndarray):
        return dout.reshape(self._cache), []


class _Dense:
    def __init__(self, in_dim: int, out_dim: int, rng, dtype):
        limit = np.sqrt(1.0 / in_dim)
        self.w = rng.uniform(-limit, limit, size=(in_dim, out_dim)).astype(dtype)
        self.b = np.zeros(out_dim, dtype=dtype)
        self._cache = None

    @property
    def params(self):
        return [self.w, self.b]

    def forward(self, x: np.ndarray, train: bool) -> np.ndarray:
        if train:
            self._cache = x
        return x @ self.w + self.b

    def backward(self, dout: np.ndarray):
        x = self._cache
        dw = x.T @ dout
        db = dout.sum(axis=0)
        dx = dout @ self.w.T
        return dx, [dw.astype(self.w.dtype), db.astype(self.b.dtype)]


# ---------------------------------------------------------------------------
# Network
# ---------------------------------------------------------------------------


class Network:
    """A feed-forward net built from a NetworkSpec; single-writer semantics."""

    def __init__(self, spec: NetworkSpec, seed: int = 0, dtype=np.float32):
        self.spec = spec
        self.dtype = dtype
        rng = np.random.default_rng(seed)
        self.layers: list = []
        shape = spec.input_shape
        for layer in spec.layers:
            next_shape = _shape_after(shape, layer)  # validates chaining
            kind = layer[0]
            if kind == "conv":
                self.layers.append(_Conv(shape[2], layer[1], layer[2], rng, dtype))
            elif kind == "pool":
                self.layers.append(_MaxPool(layer[1]))
            elif kind == "relu":
                self.layers.append(_ReLU())
            elif kind == "flatten":
                self.layers.append(_Flatten())
            elif kind == "dense":
                self.layers.append(_Dense(shape[0], layer[1], rng, dtype))
            shape = next_shape
        self.output_dim = shape[0]

    @property
    def params(self) -> list[np.ndarray]:
        out = []
        for layer in self.layers:
            out.extend(layer.params)
        return out

    def forward_batch(self, x: np.ndarray, train: bool = False) -> np.ndarray:
        x = np.asarray(x, dtype=self.dtype)
        expected = (x.shape[0],) + self.spec.input_shape
        if x.shape != expected:
            raise ValueError(f"input shape {x.shape} != {expected}")
        for layer in self.layers:
            x = layer.forward(x, train)
        return x

    def forward(self, x: np.ndarray) -> np.ndarray:
        """Single-observation forward pass; returns the m-vector."""
        x = np.asarray(x, dtype=self.dtype)
        if x.shape != self.spec.input_shape:
            raise ValueError(f"input shape {x.shape} != {self.spec.input_shape}")
        out = self.forward_batch(x[None])[0]
        if not np.isfinite(out).all():
            raise FloatingPointError("non-finite network output")
        return out

    def backward(self, dout: np.ndarray) -> list[np.ndarray]:
        """Backprop from the output gradient; returns grads matching params."""
        grads_rev: list[np.ndarray] = []
        d = dout
        for layer in reversed(self.layers):
            d, layer_grads = layer.backward(d)
            grads_rev.extend(reversed(layer_grads))
        return list(reversed(grads_rev))

    def set_params(self, values: Sequence[np.ndarray]) -> None:
        params = self.params
        if len(params) != len(values):
            raise ValueError("parameter count mismatch")
        for p, v in zip(params, values):
            if p.shape != v.shape:
                raise ValueError("parameter shape mismatch")
            p[...] = v


def sync_target(net: Network, target: Network) -> None:
    """Copy parameters bit-exactly onto the target network."""
    if net.spec != target.spec:
        raise ValueError("spec mismatch")
    target.set_params([p.copy() for p in net.params])


# ---------------------------------------------------------------------------
# Losses
# ---------------------------------------------------------------------------


def q_loss_batch(
    q_net: Network,
    q_target: Network,
    s: np.ndarray,
    a: np.ndarray,
    r: np.ndarray,
    s_next: np.ndarray,
    terminal: np.ndarray,
    gamma: float = 1.0,
) -> tuple[float, list[np.ndarray]]:
    """MSE against the double-Q bootstrap target.

    The online net picks the argmax action at s'; the target net prices it.
    Terminal transitions use the reward alone.
    """
    n = s.shape[0]
    if n == 0:
        raise ValueError("empty batch")
    a = np.asarray(a)
    r = np.asarray(r, dtype=np.float64)
    terminal = np.asarray(terminal, dtype=bool)

    q_next_online = q_net.forward_batch(s_next)
    a_star = q_next_online.argmax(axis=1)
    q_next_target = q_target.forward_batch(s_next)
    bootstrap = q_next_target[np.arange(n), a_star].astype(np.float64)
    y = r + np.where(terminal, 0.0, gamma * bootstrap)

    qs = q_net.forward_batch(s, train=True)
    pred = qs[np.arange(n), a].astype(np.float64)
    diff = pred - y
    loss = float(np.mean(diff**2))

    dqs = np.zeros_like(qs)
    dqs[np.arange(n), a] = (2.0 * diff / n).astype(qs.dtype)
    grads = q_net.backward(dqs)
    return loss, grads


def softmax(z: np.ndarray) -> np.ndarray:
    z = z - z.max(axis=-1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=-1, keepdims=True)


def policy_loss_batch(
    pi_net: Network, s: np.ndarray, a: np.ndarray
) -> tuple[float, list[np.ndarray]]:
    """KL of the one-hot behavior targets from the softmax head.

    With one-hot targets the divergence equals the cross-entropy, so the
    loss is -log softmax(logits)[a] averaged over the batch.
    """
    n = s.shape[0]
    if n == 0:
        raise ValueError("empty batch")
    a = np.asarray(a)
    if (a < 0).any() or (a >= pi_net.output_dim).any():
        raise ValueError("action index out of range")
    logits = pi_net.forward_batch(s, train=True)
    probs = softmax(logits.astype(np.float64))
    loss = float(-np.mean(np.log(probs[np.arange(n), a] + 1e-300)))
    dlogits = probs
    dlogits[np.arange(n), a] -= 1.0
    grads = pi_net.backward((dlogits / n).astype(logits.dtype))
    return loss, grads


# ---------------------------------------------------------------------------
# Optimizer
# ---------------------------------------------------------------------------


class AdamState:
    def __init__(self, net: Network, beta1: float = 0.9, beta2: float = 0.999, eps: float = 1e-8):
        self.beta1, self.beta2, self.eps = beta1, beta2, eps
        self.t = 0
        self.m = [np.zeros_like(p, dtype=np.float64) for p in net.params]
        self.v = [np.zeros_like(p, dtype=np.float64) for p in net.params]


def sgd_step(net: Network, grads: Sequence[np.ndarray], lr: float, state: AdamState) -> None:
    """One adaptive-moment update; mutates the network parameters in place."""
    params = net.params
    if len(grads) != len(params):
        raise ValueError("gradient count mismatch")
    state.t += 1
    b1, b2, eps = state.beta1, state.beta2, state.eps
    bc1 = 1.0 - b1**state.t
    bc2 = 1.0 - b2**state.t
    for p, g, m, v in zip(params, grads, state.m, state.v):
        if p.shape != g.shape:
            raise ValueError("gradient shape mismatch")
        g64 = g.astype(np.float64)
        m *= b1
        m += (1 - b1) * g64
        v *= b2
        v += (1 - b2) * g64**2
        step = lr * (m / bc1) / (np.sqrt(v / bc2) + eps)
        p -= step.astype(p.dtype)
        if not np.isfinite(p).all():
            raise FloatingPointError("non-finite parameters after update")


# ---------------------------------------------------------------------------
# Checkpoints
# ---------------------------------------------------------------------------


@dataclass
class Checkpoint:
    nets: dict[str, Network]
    counters: dict


def _checksum(data: bytes) -> bytes:
    return hashlib.sha256(data).digest()[:8]


def save_checkpoint(nets: dict[str, Network], counters: dict, path: str) -> None:
    """Write magic, per-net spec text + float32 blobs, counters, checksum."""
    buf = io.BytesIO()
    buf.write(CHECKPOINT_MAGIC)
    body = io.BytesIO()
    body.write(struct.pack("<I", len(nets)))
    for name, net in nets.items():
        name_b = name.encode("utf-8")
        spec_b = net.spec.to_text().encode("utf-8")
        body.write(struct.pack("<I", len(name_b)))
        body.write(name_b)
        body.write(struct.pack("<I", len(spec_b)))
        body.write(spec_b)
        flat = np.concatenate([p.astype("<f4").ravel() for p in net.params])
        body.write(struct.pack("<Q", flat.size))
        body.write(flat.tobytes())
    counters_b = json.dumps(counters, sort_keys=True).encode("utf-8")
    body.write(struct.pack("<I", len(counters_b)))
    body.write(counters_b)
    payload = body.getvalue()
    buf.write(payload)
    buf.write(_checksum(CHECKPOINT_MAGIC + payload))
    blob = buf.getvalue()
    tmp = path + ".tmp"
    with open(tmp, "wb") as fh:
        fh.write(blob)
    os.replace(tmp, path)


class CheckpointError(ValueError):
    pass


def load_checkpoint(path: str) -> Checkpoint:
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < len(CHECKPOINT_MAGIC) + 8:
        raise CheckpointError("truncated checkpoint")
    if blob[: len(CHECKPOINT_MAGIC)] != CHECKPOINT_MAGIC:
        raise CheckpointError("bad magic / version")
    payload, footer = blob[:-8], blob[-8:]
    if _checksum(payload) != footer:
        raise CheckpointError("checksum mismatch")
    view = io.BytesIO(payload[len(CHECKPOINT_MAGIC) :])

    def read_exact(n: int) -> bytes:
        data = view.read(n)
        if len(data) != n:
            raise CheckpointError("truncated checkpoint body")
        return data

    (n_nets,) = struct.unpack("<I", read_exact(4))
    nets: dict[str, Network] = {}
    for _ in range(n_nets):
        (ln,) = struct.unpack("<I", read_exact(4))
        name = read_exact(ln).decode("utf-8")
        (ls,) = struct.unpack("<I", read_exact(4))
        spec = NetworkSpec.from_text(read_exact(ls).decode("utf-8"))
        (count,) = struct.unpack("<Q", read_exact(8))
        flat = np.frombuffer(read_exact(count * 4), dtype="<f4")
        net = Network(spec, seed=0, dtype=np.float32)
        sizes = [p.size for p in net.params]
        if sum(sizes) != count:
            raise CheckpointError("parameter blob size mismatch")
        offset = 0
        values = []
        for p, size in zip(net.params, sizes):
            values.append(flat[offset : offset + size].reshape(p.shape).copy())
            offset += size
        net.set_params(values)
        nets[name] = net
    (lc,) = struct.unpack("<I", read_exact(4))
    counters = json.loads(read_exact(lc).decode("utf-8"))
    return Checkpoint(nets=nets, counters=counters)
