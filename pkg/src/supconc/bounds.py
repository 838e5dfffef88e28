"""Regime classification and concurrence bounds for superpositions.

Given ``Psi = alpha*phi + beta*varphi`` the achievable statements depend
on how the component states relate:

* biorthogonal (both reduced-overlap traces vanish): exact closed form
  ``sqrt(|alpha|^4 C^2(phi) + |beta|^4 C^2(varphi) + 4 |alpha beta|^2)``;
* orthogonal (vanishing scalar product): two-sided bounds on ``C(Psi)``;
* general: two-sided bounds on ``norm(Psi)^2 * C(Psi')`` where Psi' is
  the normalized superposition.

For qubit pairs the orthogonal/general bounds carry a sharper
``sqrt(1 - delta^2)`` cross-term factor; in higher dimension the
cross term is ``2|alpha beta|`` (orthogonal) or
``2|alpha beta| sqrt(1 + |<phi|varphi>|^2)`` (general), and the lower
bound picks up ``delta = min(|beta/alpha| C(varphi), |alpha/beta| C(phi))``.

Component concurrences are evaluated with the spin-flip overlap on 2x2
states and with the I-concurrence otherwise; the two agree within 1e-12
on qubit pairs. Lower bounds are clamped at zero before reporting (the
raw value is kept in the report diagnostics). All formulas assume the
inverter scale nu = 1.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateWeight,
    DeltaOutOfRange,
    DimensionMismatch,
    NotTwoQubit,
    RegimeViolation,
    SanityFailure,
)
from .measures import concurrence_qubit, i_concurrence
from .states import PureState, SuperpositionSpec, inner_product, normalize, superpose

REGIME_TOL = 1e-9    # default tolerance on |<phi|varphi>| and the trace overlaps
SANITY_TOL = 1e-9    # exact value may escape its bounds by at most this much
_DELTA_SLACK = 1e-9  # defensive headroom before DeltaOutOfRange


class Regime(enum.Enum):
    """Relation between the two component states; each level implies the next."""

    BIORTHOGONAL = "biorthogonal"
    ORTHOGONAL = "orthogonal"
    GENERAL = "general"


def _rho(s: PureState, side: str) -> np.ndarray:
    m = s.matrix
    return m @ m.conj().T if side == "A" else m.T @ m.conj()


def classify_pair(phi: PureState, varphi: PureState, tol: float = REGIME_TOL) -> Regime:
    """Classify a pair of states by reduced-support and scalar-product overlap.

    Biorthogonal means both ``Tr(rho_phi^A rho_varphi^A)`` and
    ``Tr(rho_phi^B rho_varphi^B)`` are at most ``tol``; since vanishing
    reduced overlaps force orthogonal local supports, biorthogonality
    implies plain orthogonality, and the classifier checks it first.
    """
    if (phi.dim_a, phi.dim_b) != (varphi.dim_a, varphi.dim_b):
        raise DimensionMismatch(
            f"states live on different spaces: {(phi.dim_a, phi.dim_b)} vs "
            f"{(varphi.dim_a, varphi.dim_b)}"
        )
    trace_a = abs(np.trace(_rho(phi, "A") @ _rho(varphi, "A")).real)
    trace_b = abs(np.trace(_rho(phi, "B") @ _rho(varphi, "B")).real)
    if trace_a <= tol and trace_b <= tol:
        return Regime.BIORTHOGONAL
    if abs(inner_product(phi, varphi)) <= tol:
        return Regime.ORTHOGONAL
    return Regime.GENERAL


def _component_concurrence(s: PureState) -> float:
    return concurrence_qubit(s) if s.is_qubit_pair() else i_concurrence(s)


def _weights(spec: SuperpositionSpec) -> tuple[float, float, float]:
    aa = abs(spec.alpha) ** 2
    bb = abs(spec.beta) ** 2
    return aa, bb, abs(spec.alpha * spec.beta)


def _resolve_regime(spec: SuperpositionSpec, regime: Regime | None, tol: float) -> Regime:
    if regime is not None:
        return regime
    return classify_pair(spec.phi, spec.varphi, tol)


def _require_orthogonal(regime: Regime) -> None:
    if regime is Regime.GENERAL:
        raise RegimeViolation(
            "bound requires orthogonal (or biorthogonal) component states"
        )


def _require_qubits(spec: SuperpositionSpec) -> None:
    if spec.dims != (2, 2):
        raise NotTwoQubit(f"bound requires 2x2 components, got {spec.dims}")


def _require_nonzero_weights(spec: SuperpositionSpec) -> None:
    if spec.alpha == 0 or spec.beta == 0:
        raise DegenerateWeight(
            "alpha = 0 or beta = 0: the superposition is a single component; "
            "report its exact concurrence instead of a bound"
        )


# --- bound kernels ------------------------------------------------------
# Each kernel returns (upper, lower_unclamped, delta).


def _qubit_orth_kernel(aa, bb, ab, c_phi, c_var):
    delta = max(c_phi, c_var)
    root = math.sqrt(max(0.0, 1.0 - delta * delta))
    upper = aa * c_phi + bb * c_var + 2.0 * ab * root
    lower = abs(aa * c_phi - bb * c_var) - 2.0 * ab * root
    return upper, lower, delta


def _qubit_general_kernel(aa, bb, ab, c_phi, c_var, ov):
    delta = max(abs(c_phi - ov), abs(c_var - ov))
    if delta > 1.0 + _DELTA_SLACK:
        # Unreachable for valid normalized inputs: C and |<phi|varphi>|
        # both lie in [0, 1], so |C - |<phi|varphi>|| <= 1.
        raise DeltaOutOfRange(f"delta = {delta!r} > 1")
    root = math.sqrt(max(0.0, 1.0 - delta * delta))
    upper = aa * c_phi + bb * c_var + 2.0 * ab * root
    lower = abs(aa * c_phi - bb * c_var) - 2.0 * ab * root
    return upper, lower, delta


def _qudit_ratio_delta(alpha, beta, c_phi, c_var):
    return min(abs(beta / alpha) * c_var, abs(alpha / beta) * c_phi)


def _qudit_orth_kernel(alpha, beta, c_phi, c_var):
    aa, bb, ab = abs(alpha) ** 2, abs(beta) ** 2, abs(alpha * beta)
    delta = _qudit_ratio_delta(alpha, beta, c_phi, c_var)
    upper = aa * c_phi + bb * c_var + 2.0 * ab
    lower = abs(aa * c_phi - bb * c_var) - 2.0 * ab * (1.0 + delta)
    return upper, lower, delta


def _qudit_general_kernel(alpha, beta, c_phi, c_var, ov):
    aa, bb, ab = abs(alpha) ** 2, abs(beta) ** 2, abs(alpha * beta)
    root = math.sqrt(1.0 + ov * ov)
    delta = _qudit_ratio_delta(alpha, beta, c_phi, c_var)
    upper = aa * c_phi + bb * c_var + 2.0 * ab * root
    lower = abs(aa * c_phi - bb * c_var) - 2.0 * ab * (root + delta)
    return upper, lower, delta


def _biorthogonal_closed_form(aa, bb, ab, c_phi, c_var):
    return math.sqrt(aa * aa * c_phi * c_phi + bb * bb * c_var * c_var + 4.0 * ab * ab)


def _useful_condition(alpha, beta, c_phi, c_var) -> bool:
    r1 = abs(beta / alpha)
    r2 = abs(alpha / beta)
    return (c_phi > 3.0 * r1 * r1 * c_var + 2.0 * r1) or (
        c_var > 3.0 * r2 * r2 * c_phi + 2.0 * r2
    )


# --- public bound operations ---------------------------------------------


def qubit_upper_orth(spec: SuperpositionSpec, *, regime: Regime | None = None,
                     tol: float = REGIME_TOL) -> float:
    """Upper bound on C(Psi) for orthogonal qubit components.

    ``|alpha|^2 C(phi) + |beta|^2 C(varphi) + 2|alpha beta| sqrt(1 - delta^2)``
    with ``delta = max(C(phi), C(varphi))``.
    """
    _require_qubits(spec)
    _require_orthogonal(_resolve_regime(spec, regime, tol))
    aa, bb, ab = _weights(spec)
    upper, _, _ = _qubit_orth_kernel(
        aa, bb, ab, concurrence_qubit(spec.phi), concurrence_qubit(spec.varphi)
    )
    return upper


def qubit_lower_orth(spec: SuperpositionSpec, *, regime: Regime | None = None,
                     tol: float = REGIME_TOL) -> float:
    """Lower bound on C(Psi) for orthogonal qubit components, clamped at 0.

    ``| |alpha|^2 C(phi) - |beta|^2 C(varphi) | - 2|alpha beta| sqrt(1 - delta^2)``
    with the same delta as :func:`qubit_upper_orth`.
    """
    _require_qubits(spec)
    _require_orthogonal(_resolve_regime(spec, regime, tol))
    aa, bb, ab = _weights(spec)
    _, lower, _ = _qubit_orth_kernel(
        aa, bb, ab, concurrence_qubit(spec.phi), concurrence_qubit(spec.varphi)
    )
    return max(0.0, lower)


def qubit_general_bounds(spec: SuperpositionSpec) -> tuple[float, float]:
    """Two-sided bounds on ``norm(Psi)^2 C(Psi')`` for arbitrary qubit pairs.

    Same shape as the orthogonal bounds but with
    ``delta = max(|C(phi) - ov|, |C(varphi) - ov|)`` where
    ``ov = |<phi|varphi>|``. The lower bound is clamped at 0.
    """
    _require_qubits(spec)
    aa, bb, ab = _weights(spec)
    ov = abs(inner_product(spec.phi, spec.varphi))
    upper, lower, _ = _qubit_general_kernel(
        aa, bb, ab, concurrence_qubit(spec.phi), concurrence_qubit(spec.varphi), ov
    )
    return upper, max(0.0, lower)


def exact_biorthogonal(spec: SuperpositionSpec, *, regime: Regime | None = None,
                       tol: float = REGIME_TOL) -> float:
    """Exact concurrence of a superposition of biorthogonal components.

    ``sqrt(|alpha|^4 C^2(phi) + |beta|^4 C^2(varphi) + 4 |alpha beta|^2)``;
    agrees with the directly computed concurrence within 1e-12.
    """
    resolved = _resolve_regime(spec, regime, tol)
    if resolved is not Regime.BIORTHOGONAL:
        raise RegimeViolation("exact formula requires biorthogonal components")
    aa, bb, ab = _weights(spec)
    return _biorthogonal_closed_form(
        aa, bb, ab,
        _component_concurrence(spec.phi),
        _component_concurrence(spec.varphi),
    )


def qudit_upper_orth(spec: SuperpositionSpec, *, regime: Regime | None = None,
                     tol: float = REGIME_TOL) -> float:
    """Dimension-general upper bound for orthogonal components.

    ``|alpha|^2 C(phi) + |beta|^2 C(varphi) + 2|alpha beta|``.
    """
    _require_orthogonal(_resolve_regime(spec, regime, tol))
    aa, bb, ab = _weights(spec)
    return (aa * _component_concurrence(spec.phi)
            + bb * _component_concurrence(spec.varphi) + 2.0 * ab)


def qudit_lower_orth(spec: SuperpositionSpec, *, regime: Regime | None = None,
                     tol: float = REGIME_TOL) -> float:
    """Dimension-general lower bound for orthogonal components, clamped at 0.

    ``| |alpha|^2 C(phi) - |beta|^2 C(varphi) | - 2|alpha beta| (1 + delta)``
    with ``delta = min(|beta/alpha| C(varphi), |alpha/beta| C(phi))``.
    """
    _require_orthogonal(_resolve_regime(spec, regime, tol))
    _require_nonzero_weights(spec)
    _, lower, _ = _qudit_orth_kernel(
        spec.alpha, spec.beta,
        _component_concurrence(spec.phi), _component_concurrence(spec.varphi),
    )
    return max(0.0, lower)


def qudit_general_bounds(spec: SuperpositionSpec) -> tuple[float, float]:
    """Two-sided bounds on ``norm(Psi)^2 C(Psi')`` for arbitrary components.

    The cross term carries ``sqrt(1 + |<phi|varphi>|^2)``; the lower
    bound subtracts the same delta as :func:`qudit_lower_orth` and is
    clamped at 0.
    """
    _require_nonzero_weights(spec)
    ov = abs(inner_product(spec.phi, spec.varphi))
    upper, lower, _ = _qudit_general_kernel(
        spec.alpha, spec.beta,
        _component_concurrence(spec.phi), _component_concurrence(spec.varphi), ov,
    )
    return upper, max(0.0, lower)


def lower_bound_useful(spec: SuperpositionSpec, *, regime: Regime | None = None,
                       tol: float = REGIME_TOL) -> bool:
    """Whether the orthogonal lower bound is strictly positive before clamping.

    True iff ``C(phi) > 3 |beta/alpha|^2 C(varphi) + 2 |beta/alpha|`` or
    the same with the roles of the two components exchanged.
    """
    _require_orthogonal(_resolve_regime(spec, regime, tol))
    _require_nonzero_weights(spec)
    return _useful_condition(
        spec.alpha, spec.beta,
        _component_concurrence(spec.phi), _component_concurrence(spec.varphi),
    )


# --- composed report ------------------------------------------------------


@dataclass(frozen=True)
class BoundReport:
    """Everything known about one superposition: regime, exact value, bounds.

    ``upper``/``lower``/``delta`` are the tightest applicable bound (the
    qubit form on 2x2 components, the dimension-general form otherwise);
    the ``qubit_*``/``qudit_*`` fields keep both families visible when a
    pair of qubits admits both. Bound fields are ``None`` when a weight
    is zero (no superposition to bound) and ``qubit_*`` fields are
    ``None`` above dimension 2x2. Lower bounds are clamped at 0; the raw
    values are kept in ``*_unclamped``.
    """

    regime: Regime
    regime_tol: float
    dim_a: int
    dim_b: int
    overlap: complex
    norm_squared: float
    exact_concurrence: float
    exact_formula_value: float | None
    upper: float | None
    lower: float | None
    lower_unclamped: float | None
    delta: float | None
    c_phi: float
    c_varphi: float
    lower_useful: bool | None
    qubit_upper: float | None
    qubit_lower: float | None
    qubit_lower_unclamped: float | None
    qubit_delta: float | None
    qudit_upper: float | None
    qudit_lower: float | None
    qudit_lower_unclamped: float | None
    qudit_delta: float | None

    def to_dict(self) -> dict:
        return {
            "regime": self.regime.value,
            "regime_tol": self.regime_tol,
            "dim_a": self.dim_a,
            "dim_b": self.dim_b,
            "overlap": [self.overlap.real, self.overlap.imag],
            "norm_squared": self.norm_squared,
            "exact_concurrence": self.exact_concurrence,
            "exact_formula_value": self.exact_formula_value,
            "upper": self.upper,
            "lower": self.lower,
            "lower_unclamped": self.lower_unclamped,
            "delta": self.delta,
            "c_phi": self.c_phi,
            "c_varphi": self.c_varphi,
            "lower_useful": self.lower_useful,
            "qubit_upper": self.qubit_upper,
            "qubit_lower": self.qubit_lower,
            "qubit_lower_unclamped": self.qubit_lower_unclamped,
            "qubit_delta": self.qubit_delta,
            "qudit_upper": self.qudit_upper,
            "qudit_lower": self.qudit_lower,
            "qudit_lower_unclamped": self.qudit_lower_unclamped,
            "qudit_delta": self.qudit_delta,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def evaluate(spec: SuperpositionSpec, *, tol: float = REGIME_TOL,
             regime_override: Regime | None = None) -> BoundReport:
    """Classify, compute the exact concurrence, and fill every applicable bound.

    ``regime_override`` forces the bound formulas of a chosen regime
    regardless of classification (used to reproduce reference figures
    whose source applies orthogonal-regime formulas to a slightly
    non-orthogonal pair). The report is sanity-checked before returning:
    if the exact value escapes any filled bound by more than
    ``SANITY_TOL`` a :class:`SanityFailure` is raised, which signals an
    implementation bug (or an override misapplied far outside its
    formulas' validity), never a user error.
    """
    phi, var = spec.phi, spec.varphi
    overlap = inner_product(phi, var)
    raw, norm_sq = superpose(spec)
    psi, _ = normalize(raw)

    regime = regime_override if regime_override is not None else \
        classify_pair(phi, var, tol)
    qubit = phi.is_qubit_pair()
    c_phi = _component_concurrence(phi)
    c_var = _component_concurrence(var)
    exact = i_concurrence(psi)
    aa, bb, ab = _weights(spec)
    ov = abs(overlap)
    degenerate = spec.alpha == 0 or spec.beta == 0

    exact_formula = None
    if regime is Regime.BIORTHOGONAL:
        exact_formula = _biorthogonal_closed_form(aa, bb, ab, c_phi, c_var)

    qb = qd = None
    useful = None
    if not degenerate:
        if regime is Regime.GENERAL:
            qd = _qudit_general_kernel(spec.alpha, spec.beta, c_phi, c_var, ov)
            if qubit:
                qb = _qubit_general_kernel(aa, bb, ab, c_phi, c_var, ov)
        else:
            qd = _qudit_orth_kernel(spec.alpha, spec.beta, c_phi, c_var)
            if qubit:
                qb = _qubit_orth_kernel(aa, bb, ab, c_phi, c_var)
            useful = _useful_condition(spec.alpha, spec.beta, c_phi, c_var)

    primary = qb if qb is not None else qd
    report = BoundReport(
        regime=regime,
        regime_tol=tol,
        dim_a=phi.dim_a,
        dim_b=phi.dim_b,
        overlap=overlap,
        norm_squared=norm_sq,
        exact_concurrence=exact,
        exact_formula_value=exact_formula,
        upper=primary[0] if primary else None,
        lower=max(0.0, primary[1]) if primary else None,
        lower_unclamped=primary[1] if primary else None,
        delta=primary[2] if primary else None,
        c_phi=c_phi,
        c_varphi=c_var,
        lower_useful=useful,
        qubit_upper=qb[0] if qb else None,
        qubit_lower=max(0.0, qb[1]) if qb else None,
        qubit_lower_unclamped=qb[1] if qb else None,
        qubit_delta=qb[2] if qb else None,
        qudit_upper=qd[0] if qd else None,
        qudit_lower=max(0.0, qd[1]) if qd else None,
        qudit_lower_unclamped=qd[1] if qd else None,
        qudit_delta=qd[2] if qd else None,
    )
    _check_report(report, norm_sq * exact)
    return report


def _check_report(report: BoundReport, target: float) -> None:
    d = min(report.dim_a, report.dim_b)
    cap = math.sqrt(2.0 * (d - 1) / d)
    if not -SANITY_TOL <= report.exact_concurrence <= cap + SANITY_TOL:
        raise SanityFailure(
            f"exact concurrence {report.exact_concurrence!r} outside [0, {cap!r}]"
        )
    for upper, lower, label in (
        (report.qubit_upper, report.qubit_lower, "qubit"),
        (report.qudit_upper, report.qudit_lower, "qudit"),
    ):
        if upper is None:
            continue
        if target > upper + SANITY_TOL or target < lower - SANITY_TOL:
            raise SanityFailure(
                f"exact value {target!r} escapes {label} bounds "
                f"[{lower!r}, {upper!r}]"
            )
    if report.exact_formula_value is not None:
        if abs(report.exact_formula_value - report.exact_concurrence) > SANITY_TOL:
            raise SanityFailure(
                f"closed form {report.exact_formula_value!r} disagrees with "
                f"direct value {report.exact_concurrence!r}"
            )
