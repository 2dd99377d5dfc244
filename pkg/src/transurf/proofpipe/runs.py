"""End-to-end replays of the planar and general eliminations, producing a Ledger."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..symring import LOG_DERIV, X_POLY, T, RadFrac, ZPoly
from . import reference as ref
from .ledger import MATCH, MATCH_SCALED, Ledger
from .stages import (
    DerivedRelation,
    Eliminant,
    PQRTriple,
    TrigQuadratic,
    build_pqr_general,
    build_pqr_planar,
    derive_relation,
    divide_by_monomial,
    eliminant,
    eliminate_trig,
    rationalize,
    split_radical,
    square_relation,
    trig_form,
)

Z = ZPoly.z()


@dataclass
class PipelineRun:
    pqr: PQRTriple
    derived: DerivedRelation
    b: TrigQuadratic
    c: TrigQuadratic
    elim: Eliminant
    rationalized: ZPoly | None = None
    extras: dict = field(default_factory=dict)


def general_pipeline(variant: str = "derived", rationalize_from: int | None = None) -> PipelineRun:
    """All stages of the general case; ``rationalize_from=None`` forms the whole polynomial."""
    t = build_pqr_general(variant)
    d = derive_relation(t)
    b = eliminate_trig(t, d)
    c = square_relation(t)
    e = eliminant(b, c)
    return PipelineRun(t, d, b, c, e, rationalize(e.value, min_degree=rationalize_from))


def planar_pipeline() -> PipelineRun:
    t = build_pqr_planar()
    d = derive_relation(t, planar=True)
    b_raw = eliminate_trig(t, d)
    # the relation was multiplied by P = -4 (A'/A) z; dividing by -z leaves the factor 4 A'/A
    b = TrigQuadratic(*(divide_by_monomial(x, -1, 1) for x in b_raw.parts()))
    c = square_relation(t)
    e = eliminant(b, c)
    run = PipelineRun(t, d, b, c, e, None, {"b_times_P": b_raw})
    if not e.value.q.is_zero() or e.value.k:
        raise AssertionError("planar eliminant should be a plain polynomial in z")
    run.rationalized = e.value.p
    return run


def _derived_parts(d: DerivedRelation):
    out = {}
    for greek, cp in (("alpha", d.d_sin), ("beta", d.d_cos), ("gamma", d.d_one)):
        out[f"{greek}1"], out[f"{greek}2"] = split_radical(cp.cot)
        out[f"{greek}3"], out[f"{greek}4"] = split_radical(cp.reg)
    return out


def _bc_parts(b: TrigQuadratic, c: TrigQuadratic):
    out = {}
    for letter, quad in (("b", b), ("c", c)):
        for idx, x in zip("210", quad.parts()):
            out[f"{letter}{idx}1"], out[f"{letter}{idx}2"] = split_radical(x)
    return out


def _klm_parts(e: Eliminant):
    out = {}
    for nm, x in (("kappa", e.kappa), ("lambda", e.lam), ("mu", e.mu)):
        out[f"{nm}1"], out[f"{nm}2"] = split_radical(x)
    return out


def _compare_family(ledger: Ledger, parts: dict, stated: dict, alt: dict | None = None):
    """Record every coefficient; compare those that have a stated value.

    ``alt`` holds the same family computed from the closed-form (P, Q, R); a
    mismatching entry whose stated value equals the alt value is annotated.
    """
    names = set()
    for nm, poly in parts.items():
        for k in sorted(poly.support(), reverse=True):
            names.add(f"{nm}[z^{k}]")
    for key in stated:
        names.add(key)

    def sort_key(n):
        base, k = n.split("[z^")
        return (list(parts).index(base), -int(k[:-1]))

    for name in sorted(names, key=sort_key):
        base, k = name.split("[z^")
        k = int(k[:-1])
        value = parts[base].coeff(k)
        if name in stated:
            note = ""
            if alt is not None and value != stated[name] and alt[base].coeff(k) == stated[name]:
                note = "stated value equals the one obtained from the closed-form (P, Q, R)"
            ledger.compare(name, value, stated[name], note=note)
        else:
            ledger.record(name, value)


def specialization_check(general: PipelineRun | None = None, planar: PipelineRun | None = None) -> dict:
    """Compare the general case at tau = 0 with the planar case.

    At tau = 0 the general trig relation is X times the planar one, so the
    identities that hold exactly are c_general = X^2 c_planar and
    b_general = X^2 (b_planar + 2 z c_planar), with b_planar the product by P
    before the division by -z.
    """
    general = general or general_pipeline(rationalize_from=64)
    planar = planar or planar_pipeline()
    names = ("T", "T1", "T2")
    zero_tau = lambda x: x.map_coeffs(lambda c: c.substitute_zero(names))
    X2 = RadFrac(X_POLY * X_POLY)
    z2 = RadFrac(Z.scale(2))
    b_p = planar.extras["b_times_P"]
    c_ok = all(zero_tau(g) == X2 * p for g, p in zip(general.c.parts(), planar.c.parts()))
    b_ok = all(
        zero_tau(g) == X2 * (bp + z2 * cp)
        for g, bp, cp in zip(general.b.parts(), b_p.parts(), planar.c.parts())
    )
    b_entrywise = all(zero_tau(g) == p for g, p in zip(general.b.parts(), planar.b.parts()))
    c_entrywise = all(zero_tau(g) == p for g, p in zip(general.c.parts(), planar.c.parts()))
    return {"c_scaled": c_ok, "b_shifted": b_ok, "entrywise": b_entrywise and c_entrywise}


def run_general_case(variant: str = "derived", strict: bool = False) -> Ledger:
    """Replay the general case and return the ledger (``ledger.artifacts`` holds the stages)."""
    run = general_pipeline(variant)
    alt = general_pipeline("printed", rationalize_from=64) if variant == "derived" else None
    ledger = Ledger("general")

    # (P, Q, R)
    pqr_parts = {}
    for nm, x in (("P", run.pqr.P), ("Q", run.pqr.Q), ("R", run.pqr.R)):
        pqr_parts[f"{nm}1"], pqr_parts[f"{nm}2"] = split_radical(x)
    stated = {f"{nm}[z^{k}]": v for nm, p in ref.GENERAL_PQR.items() for k, v in p.items()}
    _compare_family(ledger, pqr_parts, stated)
    ledger.derive("R1 = -Q1", pqr_parts["R1"] == -pqr_parts["Q1"], "radical parts of Q and R are opposite")

    # derived relation
    parts = _derived_parts(run.derived)
    alt_parts = _derived_parts(alt.derived) if alt else None
    _compare_family(ledger, parts, ref.GENERAL_DERIVED_COMPONENTS, alt_parts)
    for nm, poly in ref.GENERAL_DERIVED.items():
        if any(poly.coeff(k) != ref.GENERAL_DERIVED_COMPONENTS.get(f"{nm}[z^{k}]") for k in poly.support()):
            ledger.compare(f"{nm} (closed form)", parts[nm], poly)

    # the two quadratics in cos 2phi
    _compare_family(ledger, _bc_parts(run.b, run.c), ref.GENERAL_BC, _bc_parts(alt.b, alt.c) if alt else None)

    # kappa, lambda, mu
    klm = _klm_parts(run.elim)
    _compare_family(ledger, klm, ref.GENERAL_KLM, _klm_parts(alt.elim) if alt else None)
    k17, l17, m17 = klm["kappa2"].coeff(17), klm["lambda2"].coeff(17), klm["mu2"].coeff(17)
    lead_zero = (k17 * k17 - l17 * m17).is_zero()
    ledger.derive("kappa2[z^17]^2 - lambda2[z^17]*mu2[z^17] = 0", lead_zero, str(k17 * k17 - l17 * m17))

    # rationalized eliminant
    E = run.rationalized
    U, V = run.elim.value.p, run.elim.value.q
    ledger.record("E.degree", E.degree, note="degree of the rationalized eliminant, found empirically")
    ledger.compare("E[z^68]", E.coeff(68), 0)
    ledger.compare("E[z^66]", E.coeff(66), 0)
    U32, V31 = U.coeff(32), V.coeff(31)
    two_squares = E.coeff(64) == U32 * U32 + V31 * V31
    ledger.record("E[z^64]", E.coeff(64))
    ledger.derive("E[z^64] = U[z^32]^2 + V[z^31]^2", two_squares,
                  "U, V: non-radical and radical parts of kappa^2 - lambda*mu")
    ledger.record("U[z^34]", U.coeff(34))
    ledger.compare("U[z^32]", U32, ref.GENERAL_U32_EXPANDED)
    e77 = ledger.compare("U[z^32] ~ tau^2 - (A'/A)^2", U32, ref.GENERAL_U32_REDUCED, allow_scale=True)
    e78 = ledger.compare("V[z^31] ~ tau*A'/A", V31, ref.GENERAL_V31_REDUCED, allow_scale=True)
    for k in E.support()[::-1]:
        if k < 64:
            ledger.record(f"E[z^{k}]", E.coeff(k))
    ledger.assume("all coefficients of E vanish",
                  "a nonzero coefficient would make phi_u a function of u alone, forcing K = 0")

    # tau^4 = tau^2 (tau^2 - (A'/A)^2) + (tau A'/A)^2, so both relations force tau = 0
    identity = T**4 == T * T * ref.GENERAL_U32_REDUCED + ref.GENERAL_V31_REDUCED**2
    ledger.derive("tau = 0", identity and e77.status in (MATCH, MATCH_SCALED) and e78.status in (MATCH, MATCH_SCALED),
                  "tau^4 = tau^2*(tau^2 - (A'/A)^2) + (tau*A'/A)^2")

    special = specialization_check(run, planar_pipeline())
    ledger.derive("tau=0 specialization: c = X^2 c_planar", special["c_scaled"], "exact")
    ledger.derive("tau=0 specialization: b = X^2 (b_planar*P + 2z c_planar)", special["b_shifted"], "exact")
    ledger.record("tau=0 specialization entrywise", special["entrywise"],
                  note="entry-for-entry equality does not hold; the two relations differ by the factor X")

    conclusive = lead_zero and two_squares and E.coeff(68).is_zero() and E.coeff(66).is_zero()
    ledger.proven = bool(conclusive and ledger["tau = 0"].status == "derived")
    if e77.status in (MATCH, MATCH_SCALED):
        ledger.conclusion.append("tau^2 = (A'/A)^2")
    if e78.status in (MATCH, MATCH_SCALED):
        ledger.conclusion.append("tau*A'/A = 0")
    if ledger.proven:
        ledger.conclusion.append("tau = 0: contradiction with a non-planar generating curve")
    ledger.artifacts = {"run": run, "alt": alt}
    if strict:
        ledger.raise_on_mismatch()
    return ledger


def run_planar_case(strict: bool = False) -> Ledger:
    run = planar_pipeline()
    ledger = Ledger("planar")
    for nm, x in (("P", run.pqr.P), ("Q", run.pqr.Q), ("R", run.pqr.R)):
        ledger.compare_poly(nm, split_radical(x)[1], ref.PLANAR_PQR[nm])
    for nm, cp in (("dsin", run.derived.d_sin), ("dcos", run.derived.d_cos), ("done", run.derived.d_one)):
        ledger.compare_poly(f"{nm}.cot", split_radical(cp.cot)[1], ref.PLANAR_DERIVED[f"{nm}.cot"])
        ledger.compare_poly(f"{nm}.reg", split_radical(cp.reg)[1], ref.PLANAR_DERIVED[f"{nm}.reg"])
    form = trig_form(run.derived)
    for nm in ("sin", "sin_cos", "cos2", "cos", "one"):
        ledger.compare_poly(f"trig.{nm}", split_radical(getattr(form, nm))[1], ref.PLANAR_TRIG_FORM[f"trig.{nm}"])
    for letter, quad in (("b", run.b), ("c", run.c)):
        for idx, x in zip("210", quad.parts()):
            ledger.compare_poly(f"{letter}{idx}", split_radical(x)[1], ref.PLANAR_BC[f"{letter}{idx}"])
    klm = {"kappa": run.elim.kappa.p, "lambda": run.elim.lam.p, "mu": run.elim.mu.p}
    for nm, poly in klm.items():
        for k in sorted(poly.support(), reverse=True):
            key = f"{nm}[z^{k}]"
            if key in ref.PLANAR_KLM:
                ledger.compare(key, poly.coeff(k), ref.PLANAR_KLM[key])
            else:
                ledger.record(key, poly.coeff(k))

    E = run.rationalized
    ledger.record("E.degree", E.degree, note="degree of the eliminant, found empirically")
    z16 = ledger.compare("E[z^16]", E.coeff(16), 0)
    z14 = ledger.compare("E[z^14]", E.coeff(14), ref.PLANAR_E14, allow_scale=True)
    if z14.status == MATCH_SCALED:
        c14 = E.coeff(14).ratio_to(LOG_DERIV**2)
        z14.note = f"engine coefficient is {c14}*(A'/A)^2; the stated constant -14 differs by the factor {z14.scale}"
    for k in E.support()[::-1]:
        if k < 14:
            ledger.record(f"E[z^{k}]", E.coeff(k))
    ledger.assume("all coefficients of E vanish",
                  "a nonzero coefficient would make phi_u a function of u alone, forcing K = 0")
    a_const = z14.status in (MATCH, MATCH_SCALED)
    ledger.derive("A' = 0", a_const, "z^14 coefficient is a nonzero multiple of (A'/A)^2")
    ledger.assume("circle case", "A constant makes the u-curves circles; the circle-generator probe then gives K = 0")
    ledger.proven = bool(a_const and z16.status == MATCH)
    if z16.status == MATCH:
        ledger.conclusion.append("z^16 coefficient = 0")
    if a_const:
        ledger.conclusion.append(f"z^14 coefficient = {E.coeff(14).ratio_to(LOG_DERIV**2)}*(A'/A)^2")
        ledger.conclusion.append("A' = 0: u-curves are circles (handled by the circle-generator probe)")
    ledger.artifacts = {"run": run}
    if strict:
        ledger.raise_on_mismatch()
    return ledger
