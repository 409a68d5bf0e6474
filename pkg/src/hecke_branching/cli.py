"""Command-line interface.

Exit codes: 0 success, 1 domain error, 2 usage error or malformed input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Any, Sequence

from . import multiseg as ms
from .branching import SimpleLabel, branching_socle, crystal_graph, label_translate, restriction_profile
from .hall import algebra as hall_alg
from .hall.counting import hall_polynomial, set_cache_dir
from .multipartition import MultiPartition, Multicharge
from .multiseg import Convention, DomainError, Multisegment
from .realizations import (
    FockRealization,
    KleshchevRealization,
    MultisegmentRealization,
    Realization,
    enumerate_flotw,
    extract_path,
    f_v_embed,
    f_v_inverse,
    in_b_ap,
    is_flotw,
    is_kleshchev,
    normalized_charge,
    parse_realization,
    tau_shift,
    transport,
)


class UsageError(Exception):
    """Bad arguments or malformed input; exit code 2."""


# ---------------------------------------------------------------------------
# argument helpers


def _need_e(args) -> int:
    if args.e is None:
        raise UsageError("--e is required for this command")
    return args.e


def _charges(args) -> Multicharge:
    if args.charges is None:
        raise UsageError("--charges is required for this command")
    try:
        values = tuple(int(x) for x in args.charges.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"cannot parse --charges {args.charges!r}") from None
    try:
        return Multicharge(_need_e(args), values)
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def _realization(text: str, args) -> Realization:
    try:
        return parse_realization(text, _need_e(args))
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def _load_json(text: str | None, args) -> Any:
    if text is None:
        if args.infile:
            with open(args.infile, encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = sys.stdin.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _parse(reader, data, *extra) -> Any:
    try:
        return reader(data, *extra)
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def _mseg(text: str | None, args) -> Multisegment:
    return _parse(Multisegment.from_json, _load_json(text, args), _need_e(args))


def _mpart(text: str | None, args) -> MultiPartition:
    return _parse(MultiPartition.from_json, _load_json(text, args))


def _element(text: str | None, realization: Realization, args) -> Any:
    if isinstance(realization, MultisegmentRealization):
        return _mseg(text, args)
    return _mpart(text, args)


_OP = re.compile(r"^([ef])(-?\d+)$")


def _ops(text: str) -> list[tuple[str, int]]:
    out = []
    for tok in (t.strip() for t in text.split(",")):
        if not tok:
            continue
        m = _OP.match(tok)
        if not m:
            raise UsageError(f"bad operator {tok!r}; expected f<i> or e<i>")
        out.append((m.group(1), int(m.group(2))))
    return out


_GEN = re.compile(r"^f(-?\d+)(?:\^\(?(\d+)\)?)?$")


def _hall_operand(token: str, e: int, args) -> hall_alg.PBWVector:
    m = _GEN.match(token)
    if m:
        n = int(m.group(2) or 1)
        if n < 1:
            raise UsageError(f"bad divided power in {token!r}")
        return hall_alg.monomial_to_pbw(e, [(int(m.group(1)) % e, n)])
    data = _load_json(token, args)
    if isinstance(data, dict) and "terms" in data:
        vec = _parse(hall_alg.PBWVector.from_json, data)
        if vec.e != e:
            raise UsageError(f"field 'e' is {vec.e} but --e is {e}")
        return vec
    return hall_alg.PBWVector.basis(_parse(Multisegment.from_json, data, e))


# ---------------------------------------------------------------------------
# rendering


def _conv(args) -> Convention:
    return Convention.parse(args.convention)


def _text(x: Any, args) -> str:
    if x is None:
        return "0"
    if isinstance(x, Multisegment):
        return x.render(_conv(args))
    if isinstance(x, hall_alg.PBWVector):
        return x.render(_conv(args))
    return str(x)


def _json(x: Any) -> Any:
    return None if x is None else x.to_json()


def _emit(args, payload: Any, text: str) -> None:
    if args.format == "dot":
        raise UsageError("--format dot is only available for 'crystal graph'")
    out = json.dumps(payload, sort_keys=True, ensure_ascii=False) if args.format == "json" else text
    _write(args, out)


def _write(args, out: str) -> None:
    if not out.endswith("\n"):
        out += "\n"
    if args.outfile:
        with open(args.outfile, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _sort(items):
    return sorted(items, key=lambda x: (x.rank if isinstance(x, MultiPartition) else x.size, x.dumps()))


# ---------------------------------------------------------------------------
# commands


def cmd_crystal_apply(args) -> None:
    real = _realization(args.realization, args)
    x = _element(args.element, real, args)
    ops = _ops(args.ops)
    for kind, i in ops:
        if x is None:
            break
        x = real.f(x, i) if kind == "f" else real.e_op(x, i)
    _emit(args, _json(x), _text(x, args))


def _string_data(real: Realization, x: Any) -> dict:
    path = extract_path(x, real)
    eps = []
    for i in range(real.e):
        k, y = 0, real.e_op(x, i)
        while y is not None:
            k, y = k + 1, real.e_op(y, i)
        eps.append(k)
    phi = None
    hw = real.highest_weight()
    if path is not None:
        counts = [0] * real.e
        for i in path:
            counts[i] += 1
        base = hw if hw is not None else ms.AffineWeight(real.e, (0,) * real.e, (0,) * real.e)
        wt = base + ms.AffineWeight.from_dim(real.e, counts)
        phi = [eps[i] + wt.pairing(i) for i in range(real.e)]
    return {"path": path, "epsilon": eps, "phi": phi}


def cmd_crystal_string(args) -> None:
    real = _realization(args.realization, args)
    x = _element(args.element, real, args)
    data = _string_data(real, x)
    if data["path"] is None:
        raise DomainError(f"{_text(x, args)} is not connected to the empty object")
    text = "path: {}\nepsilon: {}\nphi: {}".format(
        ",".join(map(str, data["path"])) or "-", data["epsilon"], data["phi"]
    )
    _emit(args, data, text)


def cmd_crystal_graph(args) -> None:
    real = _realization(args.realization, args)
    graph = crystal_graph(real, args.depth)
    if args.format == "dot":
        _write(args, graph.to_dot(_conv(args)))
    elif args.format == "json":
        _write(args, json.dumps(graph.to_json(), sort_keys=True, ensure_ascii=False))
    else:
        lines = [f"{graph.label(s, _conv(args))} -{i}-> {graph.label(d, _conv(args))}" for s, i, d in graph.edges]
        _write(args, "\n".join(lines) if lines else graph.label(0, _conv(args)))


def cmd_flotw_check(args) -> None:
    ok = is_flotw(_mpart(args.element, args), _charges(args))
    _emit(args, {"flotw": ok}, str(ok).lower())


def cmd_flotw_list(args) -> None:
    items = _sort(enumerate_flotw(_charges(args), args.n))
    _emit(args, [x.to_json() for x in items], "\n".join(map(str, items)))


def cmd_kleshchev_check(args) -> None:
    lam = _mpart(args.element, args)
    v = _charges(args)
    ok = is_kleshchev(lam, v.residues, v.e, args.n_bound)
    _emit(args, {"kleshchev": ok}, str(ok).lower())


def cmd_iso_transport(args) -> None:
    src, dst = _realization(args.src, args), _realization(args.dst, args)
    x = _element(args.element, src, args)
    y = transport(x, src, dst)
    _emit(args, _json(y), _text(y, args))


def cmd_iso_tau(args) -> None:
    lam, v = tau_shift(_mpart(args.element, args), _charges(args))
    _emit(args, {"lam": lam.to_json(), "charges": list(v.charges)}, f"{lam} [{','.join(map(str, v.charges))}]")


def cmd_embed_fv(args) -> None:
    psi = f_v_embed(_mpart(args.element, args), _charges(args))
    _emit(args, psi.to_json(), _text(psi, args))


def cmd_embed_inverse(args) -> None:
    psi = _mseg(args.element, args)
    v = _charges(args)
    ok = in_b_ap(psi, v)
    lam = f_v_inverse(psi, normalized_charge(v.e, v.residues)) if ok else None
    _emit(args, {"in_b_ap": ok, "lam": _json(lam)}, str(ok).lower() + ("" if lam is None else f" {lam}"))


def cmd_hall_product(args) -> None:
    e = _need_e(args)
    acc = hall_alg.PBWVector.one(e)
    for tok in args.operands:
        acc = hall_alg.hall_product(acc, _hall_operand(tok, e, args))
    _emit(args, acc.to_json(), _text(acc, args))


def cmd_hall_polynomial(args) -> None:
    psi, phi1, phi2 = (_mseg(t, args) for t in (args.psi, args.phi1, args.phi2))
    poly = hall_polynomial(psi, phi1, phi2, args.method)
    _emit(args, poly.to_json(), str(poly))


def cmd_hall_canonical(args) -> None:
    e = _need_e(args)
    try:
        alpha = tuple(int(x) for x in args.alpha.split(","))
    except ValueError:
        raise UsageError(f"cannot parse --alpha {args.alpha!r}") from None
    if len(alpha) != e:
        raise UsageError(f"--alpha needs {e} entries")
    basis = hall_alg.canonical_basis(e, alpha, args.word_cap)
    items = sorted(basis.items(), key=lambda t: t[0].sort_key())
    payload = [{"label": psi.to_json(), "pbw": g.to_json()} for psi, g in items]
    text = "\n".join(f"G({_text(psi, args)}) = {_text(g, args)}" for psi, g in items)
    _emit(args, payload, text)


def cmd_hall_decomp(args) -> None:
    row = hall_alg.decomposition_row(_mseg(args.element, args), args.word_cap)
    payload = [{"mseg": psi.to_json(), "mult": n} for psi, n in row.items()]
    text = "\n".join(f"u_{_text(psi, args)}: {n}" for psi, n in row.items())
    _emit(args, payload, text)


def cmd_branch_socle(args) -> None:
    out = branching_socle(_mseg(args.element, args), args.residue)
    _emit(args, _json(out), _text(out, args))


def cmd_branch_profile(args) -> None:
    prof = restriction_profile(_mseg(args.element, args))
    payload = {str(i): _json(x) for i, x in prof.items()}
    text = "\n".join(f"{i}: {_text(x, args)}" for i, x in prof.items())
    _emit(args, payload, text)


def cmd_branch_translate(args) -> None:
    src = _realization(args.src, args)
    x = _element(args.element, src, args)
    if isinstance(src, MultisegmentRealization):
        label = SimpleLabel.of_mseg(x)
    elif isinstance(src, FockRealization):
        label = SimpleLabel.of_uglov(x, src.v)
    else:
        label = SimpleLabel.of_kleshchev(x, src.e, src.residues)
    out = label_translate(label, _realization(args.dst, args))
    _emit(args, _json(out.element()), _text(out.element(), args))


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--e", type=int, help="the integer e >= 2")
    common.add_argument("--charges", help="comma-separated multicharge, e.g. 0,1")
    common.add_argument("--convention", default="head", choices=["head", "tail"], help="multisegment notation")
    common.add_argument("--format", default="text", choices=["text", "json", "dot"])
    common.add_argument("--in", dest="infile", help="read the JSON input from a file")
    common.add_argument("--out", dest="outfile", help="write the output to a file")
    common.add_argument("--cache-dir", help="directory memoizing Hall polynomials")

    parser = argparse.ArgumentParser(prog="hecke-branching", description=__doc__)
    groups = parser.add_subparsers(dest="group", required=True)

    def leaf(sub, name: str, func, help_text: str):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    def group(name: str, help_text: str):
        g = groups.add_parser(name, help=help_text)
        return g.add_subparsers(dest="cmd", required=True)

    crystal = group("crystal", "crystal operators and graphs")
    p = leaf(crystal, "apply", cmd_crystal_apply, "apply f_i/e_i operators left to right")
    p.add_argument("--realization", required=True)
    p.add_argument("--ops", required=True, help="e.g. f1,f2,e0")
    p.add_argument("element", nargs="?")
    p = leaf(crystal, "string", cmd_crystal_string, "path from the empty object, epsilon and phi")
    p.add_argument("--realization", required=True)
    p.add_argument("element", nargs="?")
    p = leaf(crystal, "graph", cmd_crystal_graph, "crystal graph up to a rank")
    p.add_argument("--realization", required=True)
    p.add_argument("--depth", type=int, required=True)

    flotw = group("flotw", "FLOTW multipartitions")
    p = leaf(flotw, "check", cmd_flotw_check, "test the FLOTW conditions")
    p.add_argument("element", nargs="?")
    p = leaf(flotw, "list", cmd_flotw_list, "list FLOTW multipartitions of a rank")
    p.add_argument("--n", type=int, required=True)

    klesh = group("kleshchev", "Kleshchev multipartitions")
    p = leaf(klesh, "check", cmd_kleshchev_check, "test membership (charges are read mod e)")
    p.add_argument("--n-bound", type=int)
    p.add_argument("element", nargs="?")

    iso = group("iso", "crystal isomorphisms")
    p = leaf(iso, "transport", cmd_iso_transport, "transport along an extracted path")
    p.add_argument("--src", required=True)
    p.add_argument("--dst", required=True)
    p.add_argument("element", nargs="?")
    p = leaf(iso, "tau", cmd_iso_tau, "rotate components and shift the multicharge")
    p.add_argument("element", nargs="?")

    embed = group("embed", "the embedding into B(infinity)")
    p = leaf(embed, "fv", cmd_embed_fv, "multisegment of a FLOTW multipartition")
    p.add_argument("element", nargs="?")
    p = leaf(embed, "inverse-check", cmd_embed_inverse, "membership in the image, with the preimage")
    p.add_argument("element", nargs="?")

    hall = group("hall", "Hall algebra")
    p = leaf(hall, "product", cmd_hall_product, "product of f<i>, f<i>^(n), multisegment or PBW JSON operands")
    p.add_argument("operands", nargs="+")
    p = leaf(hall, "polynomial", cmd_hall_polynomial, "Hall polynomial F^psi_{phi1,phi2}")
    p.add_argument("--method", default="riedtmann", choices=["riedtmann", "subspace", "auto"])
    p.add_argument("psi")
    p.add_argument("phi1")
    p.add_argument("phi2")
    p = leaf(hall, "canonical", cmd_hall_canonical, "canonical basis of a weight space")
    p.add_argument("--alpha", required=True, help="comma-separated dimension vector")
    p.add_argument("--word-cap", type=int, default=2000)
    p = leaf(hall, "decomp", cmd_hall_decomp, "decomposition row of a tail-convention label")
    p.add_argument("--word-cap", type=int, default=2000)
    p.add_argument("element", nargs="?")

    branch = group("branch", "modular branching")
    p = leaf(branch, "socle", cmd_branch_socle, "socle label of the i-restriction")
    p.add_argument("--residue", type=int, required=True)
    p.add_argument("element", nargs="?")
    p = leaf(branch, "profile", cmd_branch_profile, "socle labels for every residue")
    p.add_argument("element", nargs="?")
    p = leaf(branch, "translate", cmd_branch_translate, "relabel a simple module")
    p.add_argument("--src", required=True)
    p.add_argument("--dst", required=True)
    p.add_argument("element", nargs="?")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.cache_dir:
            set_cache_dir(args.cache_dir)
        args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 1
    finally:
        set_cache_dir(None)
    return 0


if __name__ == "__main__":
    sys.exit(main())
