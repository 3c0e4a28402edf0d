"""Command-line surface for the form catalog, identity verifiers, and
integer-solution sequence generators.

Exit codes: 0 success, 1 verification failure, 2 usage error.  With
--format json, stdout is a single JSON document; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence, Tuple

from . import catalog, compose, dioph
from .compose import ZeroResidual
from .linstruct import NotClosed
from .polyring import PolyError


def _parse_params(text: Optional[str]) -> Optional[Tuple[int, ...]]:
    if text is None or text == "symbolic":
        return None
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise UsageError(f"parameters must be comma-separated integers or "
                         f"'symbolic', got {text!r}")


def _parse_vec(text: str, flag: str) -> Tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise UsageError(f"{flag} must be comma-separated integers, got {text!r}")


class UsageError(Exception):
    pass


def _family(name: str, params: Optional[str]):
    try:
        return catalog.family(name, _parse_params(params))
    except catalog.UnknownFamily as exc:
        raise UsageError(f"unknown family: {exc}")
    except catalog.ParamArity as exc:
        raise UsageError(str(exc))


def _emit(obj, text: str, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(obj))
    else:
        print(text)


def _vec_strings(v: Sequence[int]) -> List[str]:
    return [str(c) for c in v]


# -- subcommand handlers --------------------------------------------------

def _cmd_list_families(args) -> int:
    entries = catalog.list_families()
    text = "\n".join(
        f"{e['name']}: degree {e['degree']}, {e['coords']} coordinates, "
        f"kind {e['kind']}, params {','.join(e['params'])} — {e['description']}"
        for e in entries)
    _emit(entries, text, args.format)
    return 0


def _cmd_emit_form(args) -> int:
    fam = _family(args.family, args.params)
    form = fam.form
    _emit(form.to_json_obj(), str(form), args.format)
    return 0


def _cmd_verify(args) -> int:
    fam = _family(args.family, args.params)
    threefold = args.threefold or fam.kind == "triple"
    try:
        cmap = fam.triple_map() if threefold else fam.pair_map
    except (PolyError, ValueError) as exc:
        raise UsageError(f"{fam.name}: {exc}")
    structure = fam.structure
    if structure is not None and not fam.is_symbolic():
        structure = structure.specialize(fam.param_values)
    result = compose.verify_identity(fam.form, cmap, fam.coord_names,
                                     structure=structure, recipe=fam.recipe)
    if isinstance(result, ZeroResidual):
        _emit({"status": "zero-residual", "method": result.method},
              "ZERO-RESIDUAL", args.format)
        return 0
    _emit({"status": "nonzero-residual", "residual": result.to_json_obj()},
          f"NONZERO-RESIDUAL ({result.term_count()} terms): {result}",
          args.format)
    return 1


def _cmd_closure(args) -> int:
    fam = _family(args.family, args.params)
    if fam.structure is None:
        raise UsageError(f"{fam.name} has no matrix structure")
    structure = fam.structure
    if not fam.is_symbolic() and structure.params == fam.param_names:
        structure = structure.specialize(fam.param_values)
    if args.order == "pair":
        result = structure.verify_pair_closure(fam.recipe)
    else:
        result = structure.verify_triple_closure(fam.recipe)
    if isinstance(result, NotClosed):
        witness = result.witness
        _emit({"closed": False, "order": args.order,
               "reason": witness.reason,
               "entry": list(witness.entry),
               "residual": (witness.residual.to_json_obj()
                            if witness.residual is not None else None)},
              f"NOT-CLOSED ({args.order}): entry {witness.entry}, "
              f"reason {witness.reason}",
              args.format)
        return 1
    _emit({"closed": True, "order": args.order,
           "outputs": [p.to_json_obj() for p in result.outputs]},
          f"CLOSED ({args.order}): "
          + "; ".join(f"z{i + 1} = {p}" for i, p in enumerate(result.outputs)),
          args.format)
    return 0


_SLOT_BY_LETTER = {"x": "current", "y": "fixed1", "z": "fixed2"}


def _cmd_solve(args) -> int:
    fam = _family(args.family, args.params)
    if fam.is_symbolic():
        raise UsageError("solve needs numeric --params")
    seed = _parse_vec(args.seed, "--seed")
    step = _parse_vec(args.step, "--step")
    if fam.kind == "triple" or args.fixed is not None:
        if args.fixed is None:
            raise UsageError(f"{fam.name} composes three arguments; "
                             f"supply --fixed")
        if sorted(args.order) != ["x", "y", "z"]:
            raise UsageError("--order must be a permutation of xyz")
        spec = dioph.SequenceSpec(
            family=fam, seed=seed, count=args.count, mode="triple",
            fixed1=_parse_vec(args.fixed, "--fixed"), fixed2=step,
            order=tuple(_SLOT_BY_LETTER[ch] for ch in args.order))
    else:
        spec = dioph.SequenceSpec(family=fam, seed=seed, step=step,
                                  count=args.count)
    try:
        result = dioph.generate_sequence(spec)
    except (dioph.SeedNotSolution, dioph.StepNotSolution) as exc:
        _emit({"error": type(exc).__name__, "detail": str(exc)},
              f"{type(exc).__name__}: {exc}", args.format)
        return 1
    text = "\n".join(",".join(_vec_strings(v)) for v in result.solutions)
    _emit(result.to_json_obj(), text, args.format)
    return 0


def _cmd_search(args) -> int:
    fam = _family(args.family, args.params)
    if fam.is_symbolic():
        raise UsageError("search needs numeric --params")
    try:
        found = dioph.brute_force_search(fam, args.bound)
    except dioph.SearchSpaceTooLarge as exc:
        raise UsageError(f"search space too large: {exc}")
    text = "\n".join(",".join(_vec_strings(v)) for v in found)
    _emit({"family": fam.name, "params": _vec_strings(fam.param_values),
           "bound": args.bound,
           "solutions": [_vec_strings(v) for v in found]},
          text, args.format)
    return 0


def _cmd_invert(args) -> int:
    fam = _family(args.family, args.params)
    if fam.is_symbolic():
        raise UsageError("invert needs numeric --params")
    if fam.kind == "triple":
        raise UsageError("invert applies to two-argument composition only")
    point = _parse_vec(args.point, "--point")
    try:
        inverse = compose.invert(fam.pair_map, point)
    except (compose.NotAUnit, compose.SingularMap) as exc:
        _emit({"error": type(exc).__name__, "detail": str(exc)},
              f"{type(exc).__name__}: {exc}", args.format)
        return 1
    check = fam.pair_map.apply((point, inverse)) == compose.identity_element(fam.h)
    _emit({"point": _vec_strings(point), "inverse": _vec_strings(inverse),
           "verified": check},
          ",".join(_vec_strings(inverse)), args.format)
    return 0 if check else 1


def _cmd_block(args) -> int:
    outer = _family(args.outer, None)
    inner = _family(args.inner, None)
    if outer.structure is None or inner.structure is None:
        raise UsageError("both families must carry matrix structures")
    inner_st = inner.structure
    collisions = set(outer.structure.params) & set(inner_st.params)
    if collisions:
        inner_st = inner_st.rename_params(
            {p: f"i_{p}" for p in inner_st.params})
    lifted, recipe = outer.structure.block_compose(inner_st)
    obj = lifted.to_json_obj()
    obj["positions"] = [list(pos) for pos in recipe.positions]
    text = (f"n={lifted.n} h={lifted.h} params={','.join(lifted.params)} "
            f"positions={recipe.positions}")
    _emit(obj, text, args.format)
    return 0


# -- argument parsing ------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="matform",
                     description="Exact verification of matrix-composed "
                                 "forms and their f=1 solution sequences.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, default_format):
        p = sub.add_parser(name)
        p.set_defaults(handler=handler)
        p.add_argument("--format", choices=("json", "text"),
                       default=default_format)
        p.add_argument("--threads", type=int, default=1,
                       help="accepted for interface stability; single-threaded")
        return p

    add("list-families", _cmd_list_families, "json")

    p = add("emit-form", _cmd_emit_form, "json")
    p.add_argument("--family", required=True)
    p.add_argument("--params", default="symbolic")

    p = add("verify", _cmd_verify, "text")
    p.add_argument("--family", required=True)
    p.add_argument("--params", default="symbolic")
    p.add_argument("--threefold", action="store_true")

    p = add("closure", _cmd_closure, "text")
    p.add_argument("--family", required=True)
    p.add_argument("--params", default="symbolic")
    p.add_argument("--order", choices=("pair", "triple"), required=True)

    p = add("solve", _cmd_solve, "json")
    p.add_argument("--family", required=True)
    p.add_argument("--params", required=True)
    p.add_argument("--seed", required=True)
    p.add_argument("--step", required=True)
    p.add_argument("--fixed")
    p.add_argument("--order", default="xyz",
                   help="slot order for three-argument maps: x=current, "
                        "y=fixed, z=step")
    p.add_argument("--count", type=int, required=True)

    p = add("search", _cmd_search, "json")
    p.add_argument("--family", required=True)
    p.add_argument("--params", required=True)
    p.add_argument("--bound", type=int, required=True)

    p = add("invert", _cmd_invert, "json")
    p.add_argument("--family", required=True)
    p.add_argument("--params", required=True)
    p.add_argument("--point", required=True)

    p = add("block", _cmd_block, "json")
    p.add_argument("--outer", required=True)
    p.add_argument("--inner", required=True)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PolyError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
