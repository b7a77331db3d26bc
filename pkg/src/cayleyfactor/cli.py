"""Command-line interface.

Exit codes: 0 on success, 2 when a checked predicate is false (e.g. a
triple fails verification), 1 on usage or data errors.  All output is
deterministic; pass --json for machine-readable results.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import characters, cyclic, dihedral, search
from .factor import (
    FactorTriple,
    triple_from_json,
    triple_to_json,
    verify_triple,
)
from .groups import (
    conjugacy_classes,
    format_set,
    group_from_spec,
    make_cyclic,
    parse_set,
    set_to_json,
)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _int_list(text: str) -> list[int]:
    if not text.strip():
        return []
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise ValueError(f"malformed integer list {text!r}") from None


def _triple_text(t: FactorTriple) -> str:
    G = t.group
    return (
        f"S={format_set(G, t.S)} T={format_set(G, t.T)} U={format_set(G, t.U)} "
        f"verified={str(t.verified).lower()}"
    )


def _search_options(args) -> search.SearchOptions:
    return search.SearchOptions(
        max_size=args.max_size,
        require_connected=args.connected,
        dedup=args.dedup,
        threads=args.threads,
        node_budget=args.budget,
    )


# --- handlers ---------------------------------------------------------------


def _cmd_verify(args) -> int:
    G = group_from_spec(args.group)
    S, T, U = (parse_set(G, args.S), parse_set(G, args.T), parse_set(G, args.U))
    report = verify_triple(G, S, T, U)
    violation = None
    text = "verified: true"
    if not report:
        where = G.element_str(report.element) if report.element is not None else "?"
        violation = {"reason": report.reason, "element": G.element_to_json(report.element)}
        text = f"verified: false ({report.reason} at {where})"
    payload = {
        "group": G.descriptor(),
        "S": set_to_json(G, S),
        "T": set_to_json(G, T),
        "U": set_to_json(G, U),
        "verified": bool(report),
        "violation": violation,
    }
    _emit(args, payload, text)
    return 0 if report else 2


def _cmd_search(args) -> int:
    G = group_from_spec(args.group)
    report = search.find_factor_pairs(G, parse_set(G, args.U), _search_options(args))
    _emit(args, report.to_json(), report.to_text())
    return 0


def _cmd_enumerate(args) -> int:
    G = group_from_spec(args.group)
    report = search.enumerate_triples(G, _search_options(args))
    _emit(args, report.to_json(), report.to_text())
    return 0


def _cmd_nearfact(args) -> int:
    G = group_from_spec(args.group)
    report = search.near_factorization_census(G, _search_options(args))
    _emit(args, report.to_json(), report.to_text())
    return 0


def _cmd_sidon(args) -> int:
    n = args.n
    S = parse_set(make_cyclic(n), args.S)
    T = parse_set(make_cyclic(n), args.T)
    ok = cyclic.sidon_pair(n, S, T)
    payload = {"n": n, "S": sorted(S), "T": sorted(T), "sidon_pair": ok}
    _emit(args, payload, f"sidon pair: {str(ok).lower()}")
    return 0 if ok else 2


def _cmd_mask(args) -> int:
    n = args.n
    Zn = make_cyclic(n)
    S = parse_set(Zn, args.S)
    if args.T is None:
        poly = cyclic.mask_poly(n, S)
        payload = {"n": n, "X": sorted(S), "mask": str(poly), "coeffs": list(poly.coeffs)}
        _emit(args, payload, str(poly))
        return 0
    T = parse_set(Zn, args.T)
    product = cyclic.mask_poly(n, S) * cyclic.mask_poly(n, T)
    if args.U is None:
        payload = {"n": n, "S": sorted(S), "T": sorted(T), "product": str(product), "coeffs": list(product.coeffs)}
        _emit(args, payload, str(product))
        return 0
    U = parse_set(Zn, args.U)
    ok = cyclic.verify_via_mask(n, S, T, U)
    payload = {"n": n, "S": sorted(S), "T": sorted(T), "U": sorted(U), "verified": ok, "product": str(product)}
    _emit(args, payload, f"mask verified: {str(ok).lower()}")
    return 0 if ok else 2


def _cmd_crt(args) -> int:
    if args.compose is not None:
        data = json.loads(args.compose)
        components = [triple_from_json(item) for item in data]
        composed = cyclic.crt_compose(components)
        payload = {
            "moduli": [c.group.order for c in components],
            "components_verified": [c.verified for c in components],
            "composed": triple_to_json(composed),
        }
        _emit(args, payload, _triple_text(composed))
        return 0 if composed.verified else 2
    n = args.n
    if n is None:
        raise ValueError("crt needs --n with --S/--T/--U, or --compose")
    Zn = make_cyclic(n)
    iso = cyclic.crt_split(n)
    sets = {name: parse_set(Zn, getattr(args, name)) for name in ("S", "T", "U")}
    split = {name: cyclic.product_form_components(n, x) for name, x in sets.items()}
    bad = [name for name, parts in split.items() if parts is None]
    if bad:
        payload = {"n": n, "moduli": list(iso.moduli), "product_form": False, "offending": bad}
        _emit(args, payload, f"not of product form: {', '.join(bad)}")
        return 2
    components = []
    for i, m in enumerate(iso.moduli):
        Zm = make_cyclic(m)
        cs, ct, cu = (split["S"][i], split["T"][i], split["U"][i])
        components.append(
            {
                "n": m,
                "S": sorted(cs),
                "T": sorted(ct),
                "U": sorted(cu),
                "verified": bool(verify_triple(Zm, cs, ct, cu)),
            }
        )
    verified = bool(verify_triple(Zn, sets["S"], sets["T"], sets["U"]))
    payload = {
        "n": n,
        "moduli": list(iso.moduli),
        "product_form": True,
        "components": components,
        "verified": verified,
    }
    lines = [f"moduli: {list(iso.moduli)}"]
    for comp in components:
        lines.append(
            f"Z_{comp['n']}: S={comp['S']} T={comp['T']} U={comp['U']} "
            f"verified={str(comp['verified']).lower()}"
        )
    lines.append(f"composed verified: {str(verified).lower()}")
    _emit(args, payload, "\n".join(lines))
    return 0 if verified else 2


def _cmd_antipode(args) -> int:
    n = args.n
    Zn = make_cyclic(n)
    S0, T, U0 = (parse_set(Zn, args.S), parse_set(Zn, args.T), parse_set(Zn, args.U))
    out = cyclic.antipode_augment(n, S0, T, U0)
    if out is None:
        payload = {"n": n, "augmented": False}
        _emit(args, payload, "not augmentable: n/2 + T meets U0")
        return 2
    payload = {"n": n, "augmented": True, "triple": triple_to_json(out)}
    _emit(args, payload, _triple_text(out))
    return 0


def _cmd_table1(args) -> int:
    n = args.n
    if args.row == "multiplier":
        Zn = make_cyclic(n)
        base = FactorTriple.build(Zn, parse_set(Zn, args.S), parse_set(Zn, args.T), parse_set(Zn, args.U))
        if args.g is None:
            raise ValueError("multiplier row needs --g")
        out = cyclic.table1_multiplier(args.g, base)
    elif args.row == "half-shift":
        out = cyclic.table1_half_shift(n, parse_set(make_cyclic(n), args.U))
    elif args.row == "pm-d":
        if args.d is None:
            raise ValueError("pm-d row needs --d")
        out = cyclic.table1_pm_d(n, args.d)
    else:
        out = cyclic.table1_index_sets(n, _int_list(args.I), _int_list(args.J))
    _emit(args, {"row": args.row, "triple": triple_to_json(out)}, _triple_text(out))
    return 0


def _cmd_table2(args) -> int:
    params: dict = {}
    if args.m is not None:
        params["m"] = args.m
    if args.u is not None:
        params["u"] = args.u
    if args.a is not None:
        params["a"] = args.a
    if args.us is not None:
        params["us"] = _int_list(args.us)
    out = dihedral.table2_family(args.row, args.n, **params)
    _emit(args, {"row": args.row, "triple": triple_to_json(out)}, _triple_text(out))
    return 0


def _cmd_pecher(args) -> int:
    pc = dihedral.pecher_correspondence(args.n)
    if args.inverse:
        X = parse_set(pc.dihedral, args.S)
        image = dihedral.pecher_inverse(pc, X)
        payload = {
            "n": args.n,
            "direction": "inverse",
            "input": set_to_json(pc.dihedral, X),
            "image": set_to_json(pc.cyclic, image),
        }
        _emit(args, payload, format_set(pc.cyclic, image))
    else:
        X = parse_set(pc.cyclic, args.S)
        image = dihedral.pecher_forward(pc, X)
        payload = {
            "n": args.n,
            "direction": "forward",
            "input": set_to_json(pc.cyclic, X),
            "image": set_to_json(pc.dihedral, image),
        }
        _emit(args, payload, format_set(pc.dihedral, image))
    return 0


def _cmd_char_check(args) -> int:
    G = group_from_spec(args.group)
    S, T, U = (parse_set(G, args.S), parse_set(G, args.T), parse_set(G, args.U))
    rows = characters.character_products(G, S, T, U)
    ok = all(res <= characters.CRITERION_TOL for *_, res in rows)
    payload_rows = [
        {
            "char": label,
            "chiS": [cs.real, cs.imag],
            "chiT": [ct.real, ct.imag],
            "chiU": [cu.real, cu.imag],
            "residual": res,
        }
        for label, cs, ct, cu, res in rows
    ]
    payload = {"group": G.descriptor(), "criterion": ok, "characters": payload_rows}
    lines = [
        f"{label:>8}  chi(S)={cs:.6f}  chi(T)={ct:.6f}  chi(U)={cu:.6f}  residual={res:.2e}"
        for label, cs, ct, cu, res in rows
    ]
    lines.append(f"criterion: {str(ok).lower()}")
    _emit(args, payload, "\n".join(lines))
    return 0 if ok else 2


def _cmd_eigen(args) -> int:
    G = group_from_spec(args.group)
    X = parse_set(G, args.S)
    rows = characters.cayley_eigenvalue_rows(G, X)
    payload = {
        "group": G.descriptor(),
        "X": set_to_json(G, X),
        "eigenvalues": [
            {"char": label, "degree": deg, "value": [lam.real, lam.imag], "multiplicity": mult}
            for label, deg, lam, mult in rows
        ],
    }
    lines = [
        f"{label:>8}  degree={deg}  eigenvalue={lam:.6f}  multiplicity={mult}"
        for label, deg, lam, mult in rows
    ]
    _emit(args, payload, "\n".join(lines))
    return 0


def _cmd_dstar(args) -> int:
    d, witness = cyclic.dstar_witness(args.n, budget=args.budget)
    payload = {"n": args.n, "dstar": d}
    text = f"dstar({args.n}) = {d}"
    if witness is not None:
        S, T = witness
        payload["S"] = sorted(S)
        payload["T"] = sorted(T)
        text += f" witness S={sorted(S)} T={sorted(T)}"
    _emit(args, payload, text)
    return 0


def _cmd_classes(args) -> int:
    G = group_from_spec(args.group)
    classes = conjugacy_classes(G)
    payload = {
        "group": G.descriptor(),
        "classes": [[G.element_to_json(g) for g in cls] for cls in classes],
    }
    _emit(args, payload, "\n".join(format_set(G, cls) for cls in classes))
    return 0


# --- parser ------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's default 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _default_threads() -> int:
    raw = os.environ.get("CAYLEY_FACTOR_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cayley-factor", description="Cayley-graph factorization toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, help_text: str):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    def add_group(p):
        p.add_argument("--group", required=True, help="cyclic:N, dihedral:N, or a JSON descriptor")

    def add_sets(p, names=("S", "T", "U")):
        for name in names:
            p.add_argument(f"--{name}", required=True, help=f"set literal for {name}")

    def add_search_opts(p):
        p.add_argument("--max-size", type=int, default=None, help="cap on |S| and |T|")
        p.add_argument("--connected", action="store_true", help="keep only generating U")
        p.add_argument("--dedup", action="store_true", help="one representative per Aut(G)-orbit")
        p.add_argument("--threads", type=int, default=_default_threads())
        p.add_argument("--budget", type=int, default=search.DEFAULT_NODE_BUDGET,
                       help="search nodes per partition")

    p = add("verify", _cmd_verify, "verify a factor triple")
    add_group(p)
    add_sets(p)

    p = add("search", _cmd_search, "all factor pairs for a given U")
    add_group(p)
    add_sets(p, names=("U",))
    add_search_opts(p)

    p = add("enumerate", _cmd_enumerate, "all verified triples within size bounds")
    add_group(p)
    add_search_opts(p)

    p = add("nearfact", _cmd_nearfact, "near-factorization census (U = G minus identity)")
    add_group(p)
    add_search_opts(p)

    p = add("sidon", _cmd_sidon, "Sidon-pair test in Z_n")
    p.add_argument("--n", type=int, required=True)
    add_sets(p, names=("S", "T"))

    p = add("mask", _cmd_mask, "mask polynomials mod X^n - 1")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--S", required=True, help="set literal")
    p.add_argument("--T", default=None, help="optional second set; prints the product")
    p.add_argument("--U", default=None, help="optional target set; verifies F_S F_T = F_U")

    p = add("crt", _cmd_crt, "CRT split of a triple, or --compose component triples")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--S", default=None)
    p.add_argument("--T", default=None)
    p.add_argument("--U", default=None)
    p.add_argument("--compose", default=None, help="JSON array of component triples")

    p = add("antipode", _cmd_antipode, "augment a verified even-n triple by n/2")
    p.add_argument("--n", type=int, required=True)
    add_sets(p)

    p = add("table1", _cmd_table1, "circulant construction families on Z_n")
    p.add_argument("--row", required=True, choices=cyclic.TABLE1_ROWS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--g", type=int, default=None, help="unit multiplier (row multiplier)")
    p.add_argument("--d", type=int, default=None, help="step (row pm-d)")
    p.add_argument("--I", default="", help="index list (row index-sets)")
    p.add_argument("--J", default="", help="index list (row index-sets)")
    p.add_argument("--S", default="", help="base triple S (row multiplier)")
    p.add_argument("--T", default="", help="base triple T (row multiplier)")
    p.add_argument("--U", default="", help="U (rows half-shift, multiplier)")

    p = add("table2", _cmd_table2, "dihedral construction families in D_2n")
    p.add_argument("--row", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--u", type=int, default=None)
    p.add_argument("--a", type=int, default=None)
    p.add_argument("--us", default=None, help="comma list of rotation offsets (row 8)")

    p = add("pecher", _cmd_pecher, "Pecher set map between Z_2n and D_2n (odd n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--S", required=True, help="set literal")
    p.add_argument("--inverse", action="store_true", help="map D_2n -> Z_2n instead")

    p = add("char-check", _cmd_char_check, "character criterion for class-closed triples")
    add_group(p)
    add_sets(p)

    p = add("eigen", _cmd_eigen, "Cayley spectrum of a class-closed set")
    add_group(p)
    p.add_argument("--S", required=True, help="set literal")

    p = add("dstar", _cmd_dstar, "exact d*(Z_n) with witness")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--budget", type=int, default=64, help="largest n the search accepts")

    p = add("classes", _cmd_classes, "conjugacy classes of a group")
    add_group(p)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return int(code) if isinstance(code, int) else 0
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON input ({exc})", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
