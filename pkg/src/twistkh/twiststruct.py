"""Structural checks on twist families K_p = D_0 with T_p inserted at a site.

Every check returns a plain-dict report (JSON-ready) with a ``pass`` field;
``pass`` is None when a hypothesis fails and no claim is made.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from .complex import BigradedHomology, cone, homology, les_ranks
from .diagram import (
    DiagramError, PlanarDiagram, TwistSite, crossing_signs, insert_twists,
    site_is_antiparallel,
)
from .khovanov import Theory, cube, map_F, map_G, s_invariant, splice

__all__ = [
    "PreconditionError",
    "TwistFamily",
    "DeltaSummand",
    "unknot_homology",
    "extract_delta",
    "predict",
    "verify_splitting",
    "verify_stab_ranges",
    "verify_ladders",
    "check_sn_constancy",
    "check_nonvanishing",
    "isomorphic_pair_check",
]

# Direct computations from the expanded diagram are skipped above this size.
EXPAND_CAP = 16


class PreconditionError(ValueError):
    """A theorem's hypothesis does not hold for the given family."""


def unknot_homology(flavor: str) -> BigradedHomology:
    if flavor == "reduced":
        return BigradedHomology({(0, 0): (1, ())}, flavor)
    return BigradedHomology({(0, -1): (1, ()), (0, 1): (1, ())}, flavor)


class TwistFamily:
    """The knots K_p obtained from a base diagram by p full twists at a site.

    Homologies are memoised per (flavor, p, method); each key is computed
    once even when several threads ask for it.
    """

    def __init__(self, base: PlanarDiagram, site: TwistSite | None = None,
                 theory: Theory | str = "reduced", name: str | None = None):
        if site is None:
            if not base.sites:
                raise DiagramError("base diagram has no twist site")
            site = base.sites[0]
        self.base = base
        self.site = site
        self.theory = Theory(theory) if isinstance(theory, str) else theory
        self.name = name or base.name
        self.c_plus, self.c_minus = crossing_signs(base)
        self._cache: dict = {}
        self._locks: dict = {}
        self._guard = threading.Lock()
        if not site_is_antiparallel(base, site):
            raise DiagramError("site %s: strands are not oppositely oriented" % (site.edges,))

    @property
    def flavor(self) -> str:
        return self.theory.flavor

    def _memo(self, key, fn):
        with self._guard:
            if key in self._cache:
                return self._cache[key]
            lock = self._locks.setdefault(key, threading.Lock())
        with lock:
            with self._guard:
                if key in self._cache:
                    return self._cache[key]
            val = fn()
            with self._guard:
                self._cache[key] = val
            return val

    def diagram(self, p: int) -> PlanarDiagram:
        if p == 0:
            return self.base
        return self._memo(("diagram", p), lambda: insert_twists(self.base, self.site, p))

    def homology(self, p: int, flavor: str | None = None, method: str = "splice") -> BigradedHomology:
        """H(K_p); ``method`` is "splice" (T_p tensored in) or "expand" (full cube)."""
        flavor = flavor or self.flavor
        if p < 0:
            method = "expand"
        if method not in ("splice", "expand"):
            raise ValueError("unknown method %r" % method)

        def run():
            t = Theory(flavor)
            if method == "splice":
                return homology(splice(self.base, self.site, p, t), flavor)
            return homology(cube(self.diagram(p), t), flavor)
        return self._memo(("H", flavor, p, method), run)

    def s(self, p: int) -> int:
        return s_invariant(self.diagram(p), self.homology(p, "equivariant"))

    def base_is_unknot(self) -> bool:
        flavor = "unreduced" if self.flavor == "equivariant" else self.flavor
        return self.homology(0) == unknot_homology(flavor)

    def describe(self) -> dict:
        return {"name": self.name, "pd": self.base.to_pd(), "site": list(self.site.edges),
                "flavor": self.flavor, "c_plus": self.c_plus, "c_minus": self.c_minus}


@dataclass(frozen=True)
class DeltaSummand:
    module: BigradedHomology
    flavor: str

    def total_rank(self) -> int:
        return self.module.total_rank()

    def to_json_obj(self) -> dict:
        return self.module.to_json_obj()


def _check_unknot_base(fam: TwistFamily):
    if not fam.base_is_unknot():
        raise PreconditionError("K_0 does not have unknot homology")


def extract_delta(fam: TwistFamily) -> DeltaSummand:
    """Δ with H(K_1) = (unknot summand) ⊕ Δ; equivariantly the torsion of H(K_1)."""
    _check_unknot_base(fam)
    s1 = fam.s(1)
    if s1 != 0:
        raise PreconditionError("s_2(K_1) = %d, not 0" % s1)
    h1 = fam.homology(1)
    if fam.flavor == "equivariant":
        if h1.free_part() != fam.homology(0):
            raise PreconditionError("free part of H(K_1) is not unknot-shaped")
        return DeltaSummand(h1.torsion_part(), fam.flavor)
    try:
        return DeltaSummand(h1 - unknot_homology(fam.flavor), fam.flavor)
    except ValueError as exc:
        raise PreconditionError("unknot summand does not embed in H(K_1): %s" % exc) from exc


def delta_shift(p: int, n: int = 2, rule: str = "derived") -> tuple[int, int]:
    """Translation of the p-th copy of Δ.

    ``rule="derived"`` gives [2p-2]{2n(1-p)}, the shift forced by the F-ladder exact sequences
    (H^i(K_p) contains M^(i-2p+2)); ``rule="statement"`` gives [2p]{2n(1-p)}.
    """
    if rule == "derived":
        return 2 * p - 2, 2 * n * (1 - p)
    if rule == "statement":
        return 2 * p, 2 * n * (1 - p)
    raise ValueError("unknown rule %r" % rule)


def predict(fam: TwistFamily, delta: DeltaSummand, p: int, rule: str = "derived") -> BigradedHomology:
    """H(K_1) ⊕ Δ-copies for 2 <= q <= p."""
    if p < 1:
        raise ValueError("prediction needs p >= 1")
    out = fam.homology(1)
    for q in range(2, p + 1):
        out = out + delta.module.shifted(*delta_shift(q, fam.theory.n, rule))
    return out


def _diff(a: BigradedHomology, b: BigradedHomology) -> list[dict]:
    keys = sorted(set(k for k, _ in a.items()) | set(k for k, _ in b.items()))
    out = []
    for h, q in keys:
        x, y = (a.free(h, q), a.torsion(h, q)), (b.free(h, q), b.torsion(h, q))
        if x != y:
            out.append({"h": h, "q": q, "predicted": [x[0], list(x[1])],
                        "computed": [y[0], list(y[1])]})
    return out


def _expandable(fam, p):
    return fam.diagram(p).n_crossings <= EXPAND_CAP


def verify_splitting(fam: TwistFamily, p_max: int, rule: str = "derived",
                     expand: bool = False) -> dict:
    """Compare predicted and computed H(K_p) for 2 <= p <= p_max."""
    rep = {"check": "splitting", "family": fam.describe(), "rule": rule, "rows": []}
    try:
        delta = extract_delta(fam)
    except PreconditionError as exc:
        rep.update({"pass": None, "hypothesis": False, "reason": str(exc)})
        if fam.base_is_unknot():
            rep["undetermined_degrees"] = {str(p): 2 * p - 2 for p in range(2, p_max + 1)}
        return rep
    rep["delta"] = delta.to_json_obj()
    ok = True
    for p in range(2, p_max + 1):
        pred = predict(fam, delta, p, rule)
        comp = fam.homology(p)
        row = {"p": p, "match": pred == comp, "mismatches": _diff(pred, comp)}
        if expand and _expandable(fam, p):
            row["expand_agrees"] = fam.homology(p, method="expand") == comp
            ok &= row["expand_agrees"]
        ok &= row["match"]
        rep["rows"].append(row)
    rep["pass"] = ok
    return rep


def _iso_degrees(report):
    bad = set()
    for (h, _), (da, db, _, rf, _, _) in report.rows.items():
        if not da == db == rf:
            bad.add(h)
    return bad


def verify_stab_ranges(fam: TwistFamily, i: int, j: int) -> dict:
    """F_{i,j} iso for h <= 2i - c_- - 2; shifted G_{i,j} iso for h >= c_+."""
    if not 0 <= i < j:
        raise ValueError("need 0 <= i < j")
    t = fam.theory
    f = les_ranks(map_F(fam.base, fam.site, i, j, t))
    g = les_ranks(map_G(fam.base, fam.site, i, j, t))
    f_bound = 2 * i - fam.c_minus - 2
    g_bound = fam.c_plus
    bad_f, bad_g = _iso_degrees(f), _iso_degrees(g)
    degs_f = {h for (h, _), v in f.rows.items() if v[0] or v[1]}
    degs_g = {h for (h, _), v in g.rows.items() if v[0] or v[1]}
    f_fail = sorted(h for h in bad_f if h <= f_bound)
    g_fail = sorted(h for h in bad_g if h >= g_bound)
    rep = {
        "check": "stab", "family": fam.describe(), "i": i, "j": j,
        "F": {"bound": f_bound, "failing_degrees": f_fail, "non_iso_degrees": sorted(bad_f),
              "vacuous": not any(h <= f_bound for h in degs_f),
              "observed_max": min(bad_f) - 1 if bad_f else None,
              "les_exact": f.exact},
        "G": {"bound": g_bound, "failing_degrees": g_fail, "non_iso_degrees": sorted(bad_g),
              "vacuous": not any(h >= g_bound for h in degs_g),
              "observed_min": max(bad_g) + 1 if bad_g else None,
              "les_exact": g.exact},
    }
    rep["F"]["pass"] = not f_fail and f.exact
    rep["G"]["pass"] = not g_fail and g.exact
    rep["pass"] = rep["F"]["pass"] and rep["G"]["pass"]
    return rep


def verify_ladders(fam: TwistFamily, rows: int = 3) -> dict:
    """Rows 0..rows-1 of the F- and G-ladders.

    (a) H(Co(F_{i,i+1})) = H(Co(F_{0,1}))[2i]{-2ni} and H(Co(G_{i,i+1})) = H(Co(G_{0,1}));
    (b) every row's long exact sequence is exact;
    (c) equivariantly, M = H(Co(F_{0,1})) and N = H(Co(G_{0,1})) have no free part.
    """
    if rows < 2:
        raise ValueError("need at least two rows")
    t = fam.theory
    n = t.n
    rep = {"check": "ladders", "family": fam.describe(), "rows": []}
    m0 = n0 = None
    ok = True
    for i in range(rows):
        F = map_F(fam.base, fam.site, i, i + 1, t)
        G = map_G(fam.base, fam.site, i, i + 1, t)
        hf, hg = homology(cone(F), t.flavor), homology(cone(G), t.flavor)
        if i == 0:
            m0, n0 = hf, hg
        row = {
            "i": i,
            "F_exact": les_ranks(F, strict=False).exact,
            "G_exact": les_ranks(G, strict=False).exact,
            "F_cone_translation": hf == m0.shifted(2 * i, -2 * n * i),
            "G_cone_constant": hg == n0,
        }
        ok &= all(row[k] for k in ("F_exact", "G_exact", "F_cone_translation", "G_cone_constant"))
        rep["rows"].append(row)
    rep["M"] = m0.to_json_obj()
    rep["N"] = n0.to_json_obj()
    if t.equivariant:
        rep["M_torsion"] = m0.is_torsion()
        rep["N_torsion"] = n0.is_torsion()
        ok &= rep["M_torsion"] and rep["N_torsion"]
    rep["pass"] = ok
    return rep


def check_sn_constancy(fam: TwistFamily, p_max: int) -> dict:
    rep = {"check": "s", "family": fam.describe()}
    if not fam.base_is_unknot():
        rep.update({"pass": None, "hypothesis": False, "reason": "K_0 is not an unknot"})
        return rep
    values = {p: fam.s(p) for p in range(1, p_max + 1)}
    rep["s2"] = {str(p): v for p, v in values.items()}
    rep["pass"] = len(set(values.values())) <= 1
    return rep


def check_nonvanishing(fam: TwistFamily, p_max: int) -> dict:
    """H^{2p}(K_p) != 0 when s_2(K_0) < s_2(K_{-1})."""
    rep = {"check": "nonvanishing", "family": fam.describe()}
    s0, sm1 = fam.s(0), fam.s(-1)
    rep["s2_K0"], rep["s2_Kminus1"] = s0, sm1
    if not s0 < sm1:
        rep.update({"pass": None, "hypothesis": False,
                    "reason": "s_2(K_0) = %d is not below s_2(K_-1) = %d" % (s0, sm1)})
        return rep
    rep["hypothesis"] = True
    rows, ok = [], True
    for p in range(1, p_max + 1):
        part = fam.homology(p).in_degree(2 * p)
        rows.append({"p": p, "degree": 2 * p, "rank": part.total_rank(),
                     "nonzero": bool(part), "positive_crossing_lower_bound": 2 * p})
        ok &= bool(part)
    rep["rows"] = rows
    # p = 1 through the ladder over K_-1: H^0(K_0) -> M must be nonzero
    dm1 = fam.diagram(-1)
    if dm1.sites:
        eq = Theory("equivariant")
        lad = les_ranks(map_F(dm1, dm1.sites[0], 0, 1, eq))
        rank_g = sum(v[4] for (h, _), v in lad.rows.items() if h == 0)
        rep["ladder_crosscheck"] = {"rank_H0_to_M": rank_g, "nonzero": rank_g > 0}
        ok &= rank_g > 0
    rep["pass"] = ok
    return rep


def isomorphic_pair_check(fa: TwistFamily, fb: TwistFamily, p_max: int,
                          expand: bool = False) -> dict:
    """H(K^A_p) = H(K^B_p) by prediction and by direct computation."""
    rep = {"check": "pair", "families": [fa.describe(), fb.describe()], "rows": []}
    if fa.homology(1) != fb.homology(1):
        rep.update({"pass": None, "hypothesis": False, "reason": "H(K_1) differ"})
        return rep
    try:
        da, db = extract_delta(fa), extract_delta(fb)
    except PreconditionError as exc:
        rep.update({"pass": None, "hypothesis": False, "reason": str(exc)})
        return rep
    ok = True
    for p in range(1, p_max + 1):
        pa, pb = predict(fa, da, p), predict(fb, db, p)
        ca, cb = fa.homology(p), fb.homology(p)
        row = {"p": p, "predicted_equal": pa == pb, "computed_equal": ca == cb,
               "prediction_matches": pa == ca and pb == cb, "total_rank": ca.total_rank()}
        if expand and _expandable(fa, p) and _expandable(fb, p):
            row["expand_equal"] = (fa.homology(p, method="expand") == ca
                                   and fb.homology(p, method="expand") == cb)
            ok &= row["expand_equal"]
        ok &= row["predicted_equal"] and row["computed_equal"] and row["prediction_matches"]
        rep["rows"].append(row)
    rep["pass"] = ok
    return rep
