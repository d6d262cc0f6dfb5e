"""Open-system time evolution of the hybrid qubit pair under pulsed coupling.

The working frame is the interaction picture at resonance.  The Hamiltonian
has an excitation-conserving exchange part and a contaminating part that flips
the topological spin without moving a flux quantum, oscillating at the wire
energy E:

    H(t) = -(g(t)/2) (a^dag s- + a s+)
           -(g'(t)/2) sigma_f^z (s+ e^{i phase(t)} + s- e^{-i phase(t)})

with phase(t) accumulating at rate E within each pulse segment.  Decoherence
enters through flux relaxation (jump operator a, rate 1/tf1) and flux
dephasing (sigma_f^z, rate 1/tf2):

    drho/dt = -i [H, rho] + (1/(2 tf1)) (2 a rho a^dag - a^dag a rho - rho a^dag a)
              + (1/tf2) (sigma_f^z rho sigma_f^z - rho)

Integration is fixed-step classical RK4; no renormalization is applied, so
trace drift measures integration quality directly.  ``evolve`` is a pure
function of its inputs; independent evolutions are safe to run concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import IntegrationError
from .hilbert import (
    DOWN,
    UP,
    HilbertSpec,
    annihilation_op,
    embed,
    flux_qubit_z,
    hermiticity_error,
    min_eigenvalue,
    purity,
    sigma_minus,
    sigma_plus,
    trace_error,
)

RECTANGULAR = "rectangular"
SIN2_RAMP = "sinSquaredRamp"

# RK4 must resolve the e^{+-iEt} phase; hard floor on points per period
MIN_STEPS_PER_PHASE_PERIOD = 100
DEFAULT_STEPS_PER_PHASE_PERIOD = 200
DEFAULT_TOTAL_STEPS = 10_000
TRACE_DRIFT_LIMIT = 1e-6


@dataclass(frozen=True)
class PulseSegment:
    """One piece of the control schedule with constant setpoints.

    g_value / g_prime_value are the plateau couplings in rad/ns; both follow
    the same envelope since they share one physical origin (the slope of the
    wire energy, switched by the phase controller).  phase_freq is the
    interaction-picture phase rate E in rad/ns.
    """

    duration: float
    g_value: float
    g_prime_value: float = 0.0
    phase_freq: float = 0.0
    shape: str = RECTANGULAR
    ramp_time: float = 0.0

    def __post_init__(self):
        if self.duration <= 0:
            raise ValueError(f"segment duration must be positive, got {self.duration}")
        if self.shape not in (RECTANGULAR, SIN2_RAMP):
            raise ValueError(f"unknown pulse shape {self.shape!r}")
        if self.shape == SIN2_RAMP:
            if self.ramp_time <= 0:
                raise ValueError("sin^2 ramp needs ramp_time > 0")
            if self.ramp_time > self.duration / 2:
                raise ValueError(
                    f"ramp_time {self.ramp_time} exceeds half the duration {self.duration}"
                )

    def envelope(self, tau: float) -> float:
        """Dimensionless envelope at time tau since segment start."""
        if self.shape == RECTANGULAR:
            return 1.0
        r = self.ramp_time
        if tau < r:
            return math.sin(math.pi * tau / (2.0 * r)) ** 2
        if tau > self.duration - r:
            return math.sin(math.pi * (self.duration - tau) / (2.0 * r)) ** 2
        return 1.0

    def area(self) -> float:
        """Integral of g(t) over the segment."""
        if self.shape == RECTANGULAR:
            return self.g_value * self.duration
        # each sin^2 ramp integrates to g * ramp_time / 2
        return self.g_value * (self.duration - self.ramp_time)


@dataclass(frozen=True)
class PulseSchedule:
    segments: tuple[PulseSegment, ...]
    sample_period: float

    def __post_init__(self):
        if not self.segments:
            raise ValueError("schedule needs at least one segment")
        if self.sample_period <= 0:
            raise ValueError("sample_period must be positive")

    @property
    def total_duration(self) -> float:
        return sum(s.duration for s in self.segments)


@dataclass(frozen=True)
class NoiseParams:
    tf1: float = math.inf
    tf2: float = math.inf
    enabled: bool = True

    def __post_init__(self):
        if self.enabled and (self.tf1 <= 0 or self.tf2 <= 0):
            raise ValueError("tf1 and tf2 must be positive when noise is enabled")

    @property
    def relaxation_rate(self) -> float:
        return 1.0 / self.tf1 if self.enabled else 0.0

    @property
    def dephasing_rate(self) -> float:
        return 1.0 / self.tf2 if self.enabled else 0.0


NO_NOISE = NoiseParams(enabled=False)


@dataclass
class Trajectory:
    """Sampled evolution record.

    The four complex series follow the state-transfer labeling:
    rho11 = <down,1| rho |down,1>, rho22 = <up,0| rho |up,0>,
    rho21 = <up,0| rho |down,1>, rho12 = <down,1| rho |up,0>.
    """

    times: np.ndarray
    rho11: np.ndarray
    rho22: np.ndarray
    rho12: np.ndarray
    rho21: np.ndarray
    trace: np.ndarray
    purity: np.ndarray
    min_eigenvalue: np.ndarray
    final_state: np.ndarray
    spec: HilbertSpec = field(default_factory=HilbertSpec)

    def __len__(self):
        return len(self.times)


class _Workspace:
    """Static operators for one Hilbert space, built once per evolution."""

    def __init__(self, spec: HilbertSpec):
        n = spec.n_fock
        self.spec = spec
        self.a = embed(annihilation_op(n), "flux", spec)
        self.a_dag = self.a.conj().T
        self.s_minus = embed(sigma_minus(), "topological", spec)
        self.s_plus = embed(sigma_plus(), "topological", spec)
        zf = embed(flux_qubit_z(n), "flux", spec)
        self.exchange = self.a_dag @ self.s_minus + self.a @ self.s_plus
        self.contam_up = zf @ self.s_plus
        self.contam_down = zf @ self.s_minus
        # diagonal operators enter the dissipators as broadcast scalings
        self.number_diag = np.real(np.diag(self.a_dag @ self.a)).copy()
        self.z_diag = np.real(np.diag(zf)).copy()


def interaction_hamiltonian(
    t: float, seg: PulseSegment, spec: HilbertSpec, phase0: float = 0.0
) -> np.ndarray:
    """Interaction-picture Hamiltonian at time t since segment start.

    phase0 is the phase already accumulated in earlier segments, so that
    multi-segment schedules keep a continuous e^{i phase} factor.
    """
    ws = _Workspace(spec)
    return _hamiltonian(ws, seg, t, phase0)


def _hamiltonian(ws: _Workspace, seg: PulseSegment, tau: float, phase0: float) -> np.ndarray:
    env = seg.envelope(tau)
    h = (-0.5 * seg.g_value * env) * ws.exchange
    if seg.g_prime_value != 0.0:
        ph = np.exp(1j * (phase0 + seg.phase_freq * tau))
        h = h + (-0.5 * seg.g_prime_value * env) * (ph * ws.contam_up + np.conj(ph) * ws.contam_down)
    return h


def lindblad_rhs(
    rho: np.ndarray, h: np.ndarray, noise: NoiseParams, spec: HilbertSpec
) -> np.ndarray:
    """Right-hand side of the master equation for a given Hamiltonian snapshot."""
    ws = _Workspace(spec)
    return _rhs_with(ws, rho, h, noise.relaxation_rate, noise.dephasing_rate)


def _rhs_with(ws, rho, h, gamma1, gamma2):
    out = -1j * (h @ rho - rho @ h)
    if gamma1 > 0.0:
        nd = ws.number_diag
        out = out + 0.5 * gamma1 * (
            2.0 * (ws.a @ rho @ ws.a_dag) - nd[:, None] * rho - rho * nd[None, :]
        )
    if gamma2 > 0.0:
        zd = ws.z_diag
        out = out + gamma2 * (zd[:, None] * rho * zd[None, :] - rho)
    return out


def default_dt(schedule: PulseSchedule) -> float:
    """Step size resolving both the total duration and the fastest phase."""
    dt = schedule.total_duration / DEFAULT_TOTAL_STEPS
    for seg in schedule.segments:
        if seg.phase_freq != 0.0:
            dt = min(dt, (2.0 * math.pi / abs(seg.phase_freq)) / DEFAULT_STEPS_PER_PHASE_PERIOD)
    return dt


def _check_dt(dt: float, schedule: PulseSchedule):
    if dt <= 0:
        raise IntegrationError(f"dt must be positive, got {dt}")
    for seg in schedule.segments:
        if seg.phase_freq != 0.0:
            limit = (2.0 * math.pi / abs(seg.phase_freq)) / MIN_STEPS_PER_PHASE_PERIOD
            if dt > limit:
                raise IntegrationError(
                    f"dt={dt:.3e} ns cannot resolve the phase frequency "
                    f"{seg.phase_freq:.3f} rad/ns (need dt <= {limit:.3e} ns)"
                )


def evolve(
    rho0: np.ndarray,
    schedule: PulseSchedule,
    noise: NoiseParams,
    spec: HilbertSpec | None = None,
    dt: float | None = None,
) -> Trajectory:
    """Integrate the master equation over a pulse schedule.

    Parameters
    ----------
    rho0 : ndarray
        Initial density matrix on the composite space.
    schedule : PulseSchedule
        Control segments; the interaction-picture phase is continuous across
        segment boundaries.
    noise : NoiseParams
        Relaxation / dephasing times; pass NO_NOISE for closed evolution.
    spec : HilbertSpec, optional
        Defaults to the two-level flux truncation.
    dt : float, optional
        RK4 step in ns; defaults to ``default_dt(schedule)``.  Each segment
        uses the largest step <= dt that divides its duration evenly.

    Returns
    -------
    Trajectory with samples roughly every ``schedule.sample_period`` plus the
    initial and final points.

    Raises
    ------
    IntegrationError if dt cannot resolve the phase factor or the final trace
    drifts by more than 1e-6.
    """
    spec = spec or HilbertSpec()
    if rho0.shape != (spec.dim, spec.dim):
        raise ValueError(f"rho0 must be {spec.dim}x{spec.dim}, got {rho0.shape}")
    if dt is None:
        dt = default_dt(schedule)
    _check_dt(dt, schedule)

    ws = _Workspace(spec)
    gamma1 = noise.relaxation_rate
    gamma2 = noise.dephasing_rate

    i_dn1 = spec.index(DOWN, 1)
    i_up0 = spec.index(UP, 0)

    times, r11, r22, r12, r21, tr, pur, mineig = [], [], [], [], [], [], [], []

    def record(t, rho):
        if not np.all(np.isfinite(rho.view(float))):
            raise IntegrationError(f"state diverged by t={t:.4g} ns; reduce dt")
        times.append(t)
        r11.append(rho[i_dn1, i_dn1])
        r22.append(rho[i_up0, i_up0])
        r12.append(rho[i_dn1, i_up0])
        r21.append(rho[i_up0, i_dn1])
        tr.append(np.real(np.trace(rho)))
        pur.append(purity(rho))
        mineig.append(min_eigenvalue(rho))

    rho = np.array(rho0, dtype=complex)
    t_global = 0.0
    phase0 = 0.0
    next_sample = 0.0

    for seg in schedule.segments:
        n_steps = max(1, math.ceil(seg.duration / dt))
        h_step = seg.duration / n_steps

        def rhs(tau, r):
            return _rhs_with(ws, r, _hamiltonian(ws, seg, tau, phase0), gamma1, gamma2)

        tau = 0.0
        for _ in range(n_steps):
            if t_global >= next_sample - 1e-12:
                record(t_global, rho)
                next_sample = t_global + schedule.sample_period
            k1 = rhs(tau, rho)
            k2 = rhs(tau + h_step / 2, rho + (h_step / 2) * k1)
            k3 = rhs(tau + h_step / 2, rho + (h_step / 2) * k2)
            k4 = rhs(tau + h_step, rho + h_step * k3)
            rho = rho + (h_step / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
            tau += h_step
            t_global += h_step
        phase0 += seg.phase_freq * seg.duration

    record(t_global, rho)

    drift = trace_error(rho)
    if not math.isfinite(drift) or drift > TRACE_DRIFT_LIMIT:
        raise IntegrationError(
            f"final trace drift {drift:.3e} exceeds {TRACE_DRIFT_LIMIT:.0e}; reduce dt"
        )

    return Trajectory(
        times=np.array(times),
        rho11=np.array(r11),
        rho22=np.array(r22),
        rho12=np.array(r12),
        rho21=np.array(r21),
        trace=np.array(tr),
        purity=np.array(pur),
        min_eigenvalue=np.array(mineig),
        final_state=rho,
        spec=spec,
    )


def build_lab_hamiltonian(omega_f, energy, g, g_prime, spec: HilbertSpec | None = None) -> np.ndarray:
    """Static frame Hamiltonian used to cross-validate the rotating-wave step.

    The topological splitting is diagonal in the simulation basis, |up> sitting
    at +energy/2, and both couplings act through the transverse operator
    s+ + s-; taking the interaction picture of this matrix and dropping the
    doubly-rotating exchange terms reproduces the working Hamiltonian exactly.
    """
    spec = spec or HilbertSpec()
    a = embed(annihilation_op(spec.n_fock), "flux", spec)
    a_dag = a.conj().T
    x_t = embed(sigma_plus() + sigma_minus(), "topological", spec)
    z_t = embed(np.diag([1.0, -1.0]).astype(complex), "topological", spec)  # (down, up)
    z_f = embed(flux_qubit_z(spec.n_fock), "flux", spec)
    return (
        omega_f * (a_dag @ a)
        - 0.5 * energy * z_t
        - 0.5 * g * ((a + a_dag) @ x_t)
        - 0.5 * g_prime * (z_f @ x_t)
    )


def evolve_static(
    rho0: np.ndarray,
    hamiltonian: np.ndarray,
    duration: float,
    noise: NoiseParams = NO_NOISE,
    spec: HilbertSpec | None = None,
    dt: float = 1e-4,
    sample_period: float | None = None,
) -> Trajectory:
    """Evolve under a fixed Hamiltonian (lab-frame cross-checks).

    The relaxation and dephasing operators commute with the free rotation, so
    the same dissipators are valid in this frame.
    """
    spec = spec or HilbertSpec()
    ws = _Workspace(spec)
    gamma1 = noise.relaxation_rate
    gamma2 = noise.dephasing_rate
    n_steps = max(1, math.ceil(duration / dt))
    h_step = duration / n_steps
    sp = sample_period if sample_period is not None else duration / 200.0

    i_dn1 = spec.index(DOWN, 1)
    i_up0 = spec.index(UP, 0)
    times, r11, r22, r12, r21, tr, pur, mineig = [], [], [], [], [], [], [], []

    def rhs(_t, r):
        return _rhs_with(ws, r, hamiltonian, gamma1, gamma2)

    rho = np.array(rho0, dtype=complex)
    t = 0.0
    next_sample = 0.0
    for _ in range(n_steps):
        if t >= next_sample - 1e-12:
            times.append(t)
            r11.append(rho[i_dn1, i_dn1])
            r22.append(rho[i_up0, i_up0])
            r12.append(rho[i_dn1, i_up0])
            r21.append(rho[i_up0, i_dn1])
            tr.append(np.real(np.trace(rho)))
            pur.append(purity(rho))
            mineig.append(min_eigenvalue(rho))
            next_sample = t + sp
        k1 = rhs(t, rho)
        k2 = rhs(t + h_step / 2, rho + (h_step / 2) * k1)
        k3 = rhs(t + h_step / 2, rho + (h_step / 2) * k2)
        k4 = rhs(t + h_step, rho + h_step * k3)
        rho = rho + (h_step / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        t += h_step
    times.append(t)
    r11.append(rho[i_dn1, i_dn1])
    r22.append(rho[i_up0, i_up0])
    r12.append(rho[i_dn1, i_up0])
    r21.append(rho[i_up0, i_dn1])
    tr.append(np.real(np.trace(rho)))
    pur.append(purity(rho))
    mineig.append(min_eigenvalue(rho))

    return Trajectory(
        times=np.array(times),
        rho11=np.array(r11),
        rho22=np.array(r22),
        rho12=np.array(r12),
        rho21=np.array(r21),
        trace=np.array(tr),
        purity=np.array(pur),
        min_eigenvalue=np.array(mineig),
        final_state=rho,
        spec=spec,
    )


def pulse_propagator(
    schedule: PulseSchedule, spec: HilbertSpec | None = None, dt: float | None = None
) -> np.ndarray:
    """Closed-system propagator U of a schedule, dU/dt = -i H(t) U.

    Gives the unitary actually generated by the pulse, for comparison against
    closed-form gate constructions.
    """
    spec = spec or HilbertSpec()
    if dt is None:
        dt = default_dt(schedule)
    _check_dt(dt, schedule)
    ws = _Workspace(spec)
    u = np.eye(spec.dim, dtype=complex)
    phase0 = 0.0
    for seg in schedule.segments:
        n_steps = max(1, math.ceil(seg.duration / dt))
        h_step = seg.duration / n_steps

        def rhs(tau, m):
            return -1j * (_hamiltonian(ws, seg, tau, phase0) @ m)

        tau = 0.0
        for _ in range(n_steps):
            k1 = rhs(tau, u)
            k2 = rhs(tau + h_step / 2, u + (h_step / 2) * k1)
            k3 = rhs(tau + h_step / 2, u + (h_step / 2) * k2)
            k4 = rhs(tau + h_step, u + h_step * k3)
            u = u + (h_step / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
            tau += h_step
        phase0 += seg.phase_freq * seg.duration
    return u


def pulse_duration_for_area(
    area: float, g_value: float, shape: str = RECTANGULAR, ramp_time: float = 0.0
) -> float:
    """Duration making the time integral of the shaped g(t) equal ``area``.

    Rectangular pulses solve in closed form; ramped pulses bisect on the
    segment-area function to a residual below 1e-12 rad.
    """
    if g_value == 0.0:
        raise ValueError("g_value must be nonzero")
    if area == 0.0:
        raise ValueError("area must be nonzero")
    if math.copysign(1.0, area) != math.copysign(1.0, g_value):
        raise ValueError(f"area {area} and g {g_value} must have the same sign")
    if shape == RECTANGULAR:
        return area / g_value
    if shape != SIN2_RAMP:
        raise ValueError(f"unknown pulse shape {shape!r}")
    if ramp_time <= 0:
        raise ValueError("sin^2 ramp needs ramp_time > 0")
    flat_equiv = abs(area / g_value)
    if flat_equiv < ramp_time:
        raise ValueError(
            f"|area/g| = {flat_equiv:.4f} ns is shorter than the ramp time {ramp_time} ns"
        )

    def area_of(duration):
        return PulseSegment(
            duration=duration, g_value=g_value, shape=SIN2_RAMP, ramp_time=ramp_time
        ).area()

    lo, hi = 2.0 * ramp_time, flat_equiv + 2.0 * ramp_time
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if abs(area_of(mid) - area) < 1e-12:
            return mid
        if (area_of(mid) - area) * math.copysign(1.0, g_value) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def trajectory_checks(traj: Trajectory) -> dict:
    """Worst-case diagnostics over all samples (used by tests and summaries)."""
    herm = hermiticity_error(traj.final_state)
    return {
        "max_trace_error": float(np.max(np.abs(traj.trace - 1.0))),
        "final_hermiticity_error": float(herm),
        "min_eigenvalue": float(np.min(traj.min_eigenvalue)),
        "final_purity": float(traj.purity[-1]),
    }
