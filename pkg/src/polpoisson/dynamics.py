"""Hamiltonian flow of the polarized model in floating point.

This is the one boundary where exact coefficients become floats: slope and
offset polynomials are compiled to float evaluators once per flow, and the
trajectory is advanced with the classical fixed-step RK4 scheme.  Hamilton's
equations for H^p = sum_j a_j(y) x^{pj} + b^p(y) read

    dx^{pi}/dt = -(sum_j x^{pj} da_j/dy^i + db^p/dy^i),   dy^i/dt = a_i(y),

so the y-subsystem is autonomous and every component H^p is a first integral
of the exact flow; conservation_report measures how far RK4 drifts from that.
"""

from __future__ import annotations

import math


class State:
    """Point of the model: x is a k-row by n-column float grid, y an n-vector."""

    __slots__ = ("x", "y")

    def __init__(self, x, y):
        x = tuple(tuple(float(v) for v in row) for row in x)
        y = tuple(float(v) for v in y)
        if x and any(len(row) != len(x[0]) for row in x):
            raise ValueError("x rows have unequal lengths")
        self.x = x
        self.y = y

    def is_finite(self):
        return all(math.isfinite(v) for row in self.x for v in row) and \
            all(math.isfinite(v) for v in self.y)

    def __eq__(self, other):
        if not isinstance(other, State):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __repr__(self):
        return f"State(x={self.x!r}, y={self.y!r})"


class Trajectory:
    """Samples (t, State) on a uniform grid, the last step shortened to land
    exactly on t_end.  overflow marks a flow truncated at a non-finite state."""

    __slots__ = ("hamiltonian", "step", "samples", "overflow")

    def __init__(self, hamiltonian, step, samples, overflow=False):
        self.hamiltonian = hamiltonian
        self.step = step
        self.samples = tuple(samples)
        self.overflow = overflow

    def __len__(self):
        return len(self.samples)

    def __iter__(self):
        return iter(self.samples)

    @property
    def times(self):
        return tuple(t for t, _ in self.samples)

    @property
    def states(self):
        return tuple(s for _, s in self.samples)

    @property
    def final(self):
        return self.samples[-1][1]


def _check_state(h, state):
    man = h.manifold
    if len(state.x) != man.k or (state.x and len(state.x[0]) != man.n) \
            or len(state.y) != man.n:
        raise ValueError(
            f"state shape ({len(state.x)}x{len(state.x[0]) if state.x else 0}, "
            f"{len(state.y)}) does not match k={man.k}, n={man.n}")


class _Rhs:
    """Right-hand side of Hamilton's equations, compiled for float states."""

    def __init__(self, h):
        man = h.manifold
        self.k = man.k
        self.n = man.n
        self.slope_at = [f.float_evaluator() for f in h.slopes]
        self.dslope_at = [[h.slopes[j].partial(s + 1).float_evaluator()
                           for j in range(man.n)] for s in range(man.n)]
        self.doffset_at = [[h.offsets[p].partial(s + 1).float_evaluator()
                            for s in range(man.n)] for p in range(man.k)]

    def __call__(self, state):
        y = state.y
        dy = tuple(ev(y) for ev in self.slope_at)
        dx = []
        for p in range(self.k):
            xrow = state.x[p]
            row = []
            for s in range(self.n):
                evs = self.dslope_at[s]
                total = self.doffset_at[p][s](y)
                for j in range(self.n):
                    total += xrow[j] * evs[j](y)
                row.append(-total)
            dx.append(tuple(row))
        return State(dx, dy)


def hamilton_rhs(h, state):
    """Time derivative of a state under the Hamiltonian flow."""
    _check_state(h, state)
    if not state.is_finite():
        raise ValueError("non-finite state")
    return _Rhs(h)(state)


def _axpy(state, factor, deriv):
    x = tuple(tuple(v + factor * d for v, d in zip(row, drow))
              for row, drow in zip(state.x, deriv.x))
    y = tuple(v + factor * d for v, d in zip(state.y, deriv.y))
    return State(x, y)


def _rk4_combine(state, h, k1, k2, k3, k4):
    f = h / 6.0
    x = tuple(tuple(v + f * (a + 2.0 * b + 2.0 * c + d)
                    for v, a, b, c, d in zip(row, r1, r2, r3, r4))
              for row, r1, r2, r3, r4 in zip(state.x, k1.x, k2.x, k3.x, k4.x))
    y = tuple(v + f * (a + 2.0 * b + 2.0 * c + d)
              for v, a, b, c, d in zip(state.y, k1.y, k2.y, k3.y, k4.y))
    return State(x, y)


def _rk4_step(rhs, state, h):
    k1 = rhs(state)
    k2 = rhs(_axpy(state, h / 2.0, k1))
    k3 = rhs(_axpy(state, h / 2.0, k2))
    k4 = rhs(_axpy(state, h, k3))
    return _rk4_combine(state, h, k1, k2, k3, k4)


def rk4_flow(h, state, t_end, dt):
    """Integrate from t=0 to t_end with fixed step dt (classical RK4).

    One sample per step boundary, including t=0; the final step is shortened
    so the last sample lands exactly on t_end.  A non-finite state truncates
    the flow and sets Trajectory.overflow.
    """
    _check_state(h, state)
    if not state.is_finite():
        raise ValueError("non-finite initial state")
    if t_end < 0:
        raise ValueError(f"t_end must be nonnegative, got {t_end}")
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    rhs = _Rhs(h)
    n_steps = 0 if t_end == 0 else max(1, math.ceil(t_end / dt - 1e-9))
    samples = [(0.0, state)]
    overflow = False
    current = state
    t_prev = 0.0
    for m in range(1, n_steps + 1):
        t_next = min(m * dt, t_end) if m < n_steps else t_end
        current = _rk4_step(rhs, current, t_next - t_prev)
        if not current.is_finite():
            overflow = True
            break
        samples.append((t_next, current))
        t_prev = t_next
    return Trajectory(h, dt, samples, overflow)


class HamiltonianEvaluator:
    """Float values of the k components H^p at a state."""

    def __init__(self, h):
        man = h.manifold
        self.k = man.k
        self.n = man.n
        self.slope_at = [f.float_evaluator() for f in h.slopes]
        self.offset_at = [f.float_evaluator() for f in h.offsets]

    def __call__(self, state):
        y = state.y
        ay = [ev(y) for ev in self.slope_at]
        out = []
        for p in range(self.k):
            total = self.offset_at[p](y)
            xrow = state.x[p]
            for j in range(self.n):
                total += ay[j] * xrow[j]
            out.append(total)
        return tuple(out)


def conservation_report(traj):
    """Per-component drift max over samples of |H^p(t) - H^p(0)|."""
    values = HamiltonianEvaluator(traj.hamiltonian)
    first = values(traj.samples[0][1])
    drift = [0.0] * len(first)
    for _, state in traj.samples[1:]:
        now = values(state)
        for p, (v, v0) in enumerate(zip(now, first)):
            drift[p] = max(drift[p], abs(v - v0))
    return tuple(drift)


def csv_header(manifold):
    cols = ["t"]
    cols += [f"x_{p}_{i}" for p in range(1, manifold.k + 1)
             for i in range(1, manifold.n + 1)]
    cols += [f"y_{i}" for i in range(1, manifold.n + 1)]
    cols += [f"H_{p}" for p in range(1, manifold.k + 1)]
    return ",".join(cols)


def write_csv(traj, destination):
    """Write the trajectory as CSV: one row per sample, plus the header
    t,x_1_1,...,x_k_n,y_1,...,y_n,H_1,...,H_k."""
    man = traj.hamiltonian.manifold
    values = HamiltonianEvaluator(traj.hamiltonian)
    lines = [csv_header(man)]
    for t, state in traj.samples:
        row = [repr(t)]
        row += [repr(v) for xrow in state.x for v in xrow]
        row += [repr(v) for v in state.y]
        row += [repr(v) for v in values(state)]
        lines.append(",".join(row))
    text = "\n".join(lines) + "\n"
    if hasattr(destination, "write"):
        destination.write(text)
    else:
        with open(destination, "w") as fh:
            fh.write(text)
