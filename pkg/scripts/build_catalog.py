"""Regenerate src/twistkh/data/catalog.json.

Developer tool only: PD codes are pulled from spherogram's knot tables
(``pip install spherogram``); the package itself never imports it.  Twist
family bases are derived here and checked with the package's own homology.

    python3 scripts/build_catalog.py
"""

from __future__ import annotations

import json
import os
import sys
from dataclasses import replace

from twistkh.diagram import (
    DiagramError, PlanarDiagram, TwistSite, canonical_relabel, crossing_signs,
    insert_twists, make_diagram, mirror, site_is_antiparallel,
)
from twistkh.khovanov import khovanov_homology

OUT = os.path.join(os.path.dirname(__file__), "..", "src", "twistkh", "data", "catalog.json")

TABLE = (
    ["%d_%d" % (3, 1)]
    + ["4_1"]
    + ["5_%d" % i for i in (1, 2)]
    + ["6_%d" % i for i in (1, 2, 3)]
    + ["7_%d" % i for i in range(1, 8)]
    + ["8_%d" % i for i in range(1, 22)]
    + ["9_1", "9_2", "9_42", "9_46"]
    + ["10_1", "10_124", "10_132"]
)


def from_spherogram(name: str) -> PlanarDiagram:
    import spherogram

    pd = spherogram.Link(name).PD_code()
    return make_diagram([tuple(e + 1 for e in x) for x in pd], None, name)


def is_unknot(d: PlanarDiagram) -> bool:
    h = khovanov_homology(d, "reduced")
    return dict(h.items()) == {(0, 0): (1, ())}


def crossing_change(d: PlanarDiagram, c: int) -> PlanarDiagram:
    xs = [list(x) for x in d.crossings]
    i, j, k, l = xs[c]
    # the old over-strand becomes the under-strand; slot 0 must stay incoming
    xs[c] = [l, i, j, k] if d.over_in[c] == 3 else [j, k, l, i]
    return make_diagram(xs, None, d.name)


def untwist_base(d: PlanarDiagram, sign: int):
    """Remove a same-sign bigon with opposite edges; return (base, site)."""
    for face in d.faces():
        if len(face) != 2:
            continue
        (e, ae), (f, af) = face
        ends = d.edge_ends()
        ce, cf = ends[e]["tail"][0], ends[e]["head"][0]
        if {ce, cf} != {ends[f]["tail"][0], ends[f]["head"][0]} or ends[f]["tail"][0] != cf:
            continue
        sg = d.signs()
        if sg[ce] != sign or sg[cf] != sign:
            continue
        if d.n_crossings == 2:
            return make_diagram([], None), TwistSite((1, 1))
        xs = [list(x) for x in d.crossings]
        new_edges = []
        for g in (e, f):
            c_t, s_t = ends[g]["tail"]
            c_h, s_h = ends[g]["head"]
            x_in = xs[c_t][(s_t + 2) % 4]
            y_out = xs[c_h][(s_h + 2) % 4]
            yc, ys = ends[y_out]["head"]
            xs[yc][ys] = x_in
            new_edges.append(x_in)
        keep = [x for n, x in enumerate(xs) if n not in (ce, cf)]
        keep2, mp = canonical_relabel(keep)
        base = make_diagram(keep2, None)
        site = TwistSite((mp[new_edges[0]], mp[new_edges[1]]))
        if site_is_antiparallel(base, site):
            return base, site
    raise DiagramError("no removable twist bigon of sign %d" % sign)


def unknotting_base(d: PlanarDiagram):
    """Unknot D' plus a site such that one positive twist at the site gives d."""
    for c in range(d.n_crossings):
        if d.signs()[c] != 1:
            continue
        u = crossing_change(d, c)
        if not is_unknot(u):
            continue
        x = u.crossings[c]
        for a, b in ((x[0], x[1]), (x[1], x[2]), (x[2], x[3]), (x[3], x[0])):
            s = TwistSite((a, b))
            try:
                if not site_is_antiparallel(u, s):
                    continue
            except DiagramError:
                continue
            k1 = insert_twists(u, s, 1)
            if khovanov_homology(k1, "reduced") == khovanov_homology(d, "reduced"):
                return u, s
    raise DiagramError("no positive unknotting crossing in %s" % d.name)


def entry(name, d, sites=(), note=None):
    out = {"name": name, "pd": d.to_pd(), "crossings": d.n_crossings}
    if sites:
        out["sites"] = [{"edges": list(s.edges)} for s in sites]
    if note:
        out["note"] = note
    return out


def main():
    cat = [entry("unknot", make_diagram([], None))]
    knots = {n: from_spherogram(n) for n in TABLE}
    for n, d in knots.items():
        cat.append(entry(n, d))
    # spherogram's 3_1 has three negative crossings
    lh = knots["3_1"]
    cat.append(entry("trefoil_lh", lh))
    cat.append(entry("trefoil_rh", mirror(lh)))
    cat.append(entry("fig8", knots["4_1"]))

    fig8 = knots["4_1"]
    base, site = untwist_base(fig8, 1)
    assert is_unknot(base)
    assert khovanov_homology(insert_twists(base, site, 1)) == khovanov_homology(fig8)
    assert khovanov_homology(insert_twists(base, site, -1)) == khovanov_homology(lh)
    cat.append(entry("U_fig8", base, [site], "K_1 = 4_1, K_-1 = left trefoil"))
    cat.append(entry("U_lefttref", base, [site], "K_-1 = left trefoil, K_0 = unknot"))
    pos = mirror(base)
    assert khovanov_homology(insert_twists(pos, site, 1)) == khovanov_homology(mirror(lh))
    cat.append(entry("U_clasp_pos", pos, [site], "K_1 = right trefoil"))
    cat.append(entry("trivial", make_diagram([], None), [TwistSite((1, 1))]))

    for name, tag, note in (("conway", "K11n34", "Conway knot"),
                            ("kinoshita_terasaka", "K11n42", "Kinoshita-Terasaka knot")):
        d = from_spherogram(tag)
        if not any(s == 1 for s in d.signs()):
            d = mirror(d)
        cat.append(entry(name, d, note=note))
        try:
            u, s = unknotting_base(d)
        except DiagramError:
            d = mirror(d)
            u, s = unknotting_base(d)
            cat[-1] = entry(name, d, note=note + " (mirror image)")
        cat.append(entry("U_" + name, u, [s], "K_0 = unknot, K_1 = %s" % note))
    with open(OUT, "w") as fh:
        json.dump(cat, fh, indent=1)
        fh.write("\n")
    print("wrote %d entries to %s" % (len(cat), os.path.normpath(OUT)), file=sys.stderr)


if __name__ == "__main__":
    main()
