"""Command-line front end: build shifts and morphisms, count, emit JSON or text.

Exit codes: 0 success, 1 data or verification failure, 2 usage error,
3 precondition or cost-guard violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import urllib.error
import urllib.request
from dataclasses import dataclass
from pathlib import Path

from .combinatorics import PartSpec, transversal_of
from .scales import (
    EnumerationCapError,
    distinguished_set_scales,
    global_dims,
    symbol_dims,
    wheels_bgf,
    wheels_gf,
)
from .shiftspace import (
    DegenerateShiftError,
    ReducibleShiftError,
    VertexShift,
    first_return,
    first_return_matrix,
    higher_block,
    language,
    parse_forbidden,
    parse_matrix,
    periodic_counts,
    zeta,
    zeta_rational,
)
from .substitutions import (
    PRESETS,
    StabilizationError,
    morphism_from_json,
    substitution_scales,
)
from .verify import language_witnesses, run_reference_suite

EXIT_OK = 0
EXIT_DATA = 1
EXIT_USAGE = 2
EXIT_PRECONDITION = 3

DEFAULT_ORDER = 64
DEFAULT_CAP = 10_000_000
MAX_LANGUAGE_ORDER = 14
FIXTURES_ENV = "SCALESHIFT_FIXTURES"


class CommandError(Exception):
    """Failure with a chosen exit code; the message goes to stderr."""

    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class RunConfig:
    order: int = DEFAULT_ORDER
    fmt: str | None = None
    cap: int = DEFAULT_CAP
    fixtures: Path = Path(__file__).parent / "fixtures"

    def __post_init__(self):
        if self.order < 1:
            raise CommandError(EXIT_USAGE, "--order must be at least 1")
        if self.cap < 1:
            raise CommandError(EXIT_USAGE, "--cap must be at least 1")

    def format_or(self, default: str) -> str:
        return self.fmt if self.fmt is not None else default


def _emit(data: dict, fmt: str, text_lines) -> None:
    if fmt == "json":
        print(json.dumps(data, ensure_ascii=False, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _read_file(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise CommandError(EXIT_DATA, f"cannot read {path}: {err}") from err


def _load_shift(path: str) -> VertexShift:
    try:
        return parse_matrix(_read_file(path))
    except ValueError as err:
        raise CommandError(EXIT_DATA, f"bad matrix file {path}: {err}") from err


def _word_text(word: tuple[str, ...], separator_needed: bool) -> str:
    return (" " if separator_needed else "").join(word)


# -- wheels ---------------------------------------------------------------


def cmd_wheels(args, config: RunConfig) -> int:
    try:
        spec = PartSpec.parse(args.parts)
    except ValueError as err:
        raise CommandError(EXIT_USAGE, f"bad --parts: {err}") from err
    total = int(wheels_gf(spec, args.n).coefficient(args.n))
    data = {"n": args.n, "parts": args.parts, "total": total}
    lines = [str(total)]
    if args.by_length:
        table = wheels_bgf(spec, args.n)
        row = [int(table.coefficient(args.n, m)) for m in range(1, args.n + 1)]
        data["by_length"] = row
        lines = [",".join(str(v) for v in row)]
    _emit(data, config.format_or("text"), lines)
    return EXIT_OK


# -- vertex ---------------------------------------------------------------


def _require_symbol(args, shift: VertexShift) -> str:
    if args.symbol is None:
        raise CommandError(EXIT_USAGE, "this command needs --symbol")
    if args.symbol not in shift.alphabet:
        raise CommandError(
            EXIT_USAGE,
            f"symbol {args.symbol!r} not in alphabet {list(shift.alphabet.symbols)}",
        )
    return args.symbol


def cmd_vertex(args, config: RunConfig) -> int:
    shift = _load_shift(args.matrix)
    order = args.order if args.order is not None else config.order
    if order < 1:
        raise CommandError(EXIT_USAGE, "--order must be at least 1")
    fmt = config.format_or("json")
    if args.vertex_command == "zeta":
        form = zeta_rational(shift)
        coeffs = [int(zeta(shift, order).coefficient(n)) for n in range(order + 1)]
        data = {
            "numerator": list(form.numerator),
            "denominator": list(form.denominator),
            "coefficients": coeffs,
        }
        _emit(data, fmt, [",".join(str(c) for c in coeffs)])
        return EXIT_OK
    if args.vertex_command == "loops":
        symbol = _require_symbol(args, shift)
        loops = first_return(shift, symbol, order)
        coeffs = [int(loops.series.coefficient(n)) for n in range(order + 1)]
        _emit(loops.to_json(), fmt, [",".join(str(c) for c in coeffs)])
        return EXIT_OK
    if args.vertex_command == "dims":
        symbol = _require_symbol(args, shift)
        report = symbol_dims(shift, symbol, order, bivariate=args.bivariate)
        data = {"symbol": symbol, **report.to_json()}
        lines = [
            f"n={n} transversal={report.transversal_at(n)} orbital={report.orbital_at(n)}"
            for n in range(1, order + 1)
        ]
        _emit(data, fmt, lines)
        return EXIT_OK
    if args.vertex_command == "global":
        report = global_dims(shift, order, cap=config.cap)
        lines = [
            f"n={n} transversal={report.transversal_at(n)} orbital={report.orbital_at(n)}"
            for n in range(1, order + 1)
        ]
        _emit(report.to_json(), fmt, lines)
        return EXIT_OK
    if args.vertex_command == "language":
        if order > MAX_LANGUAGE_ORDER:
            raise CommandError(
                EXIT_PRECONDITION,
                f"language enumeration is limited to --order {MAX_LANGUAGE_ORDER}",
            )
        spaced = any(len(symbol) > 1 for symbol in shift.alphabet)
        key = lambda word: tuple(shift.alphabet.index(s) for s in word)
        words = sorted(language(shift, order), key=key)
        witnesses = sorted(language_witnesses(shift, order), key=key)
        data = {
            "n": order,
            "count": len(words),
            "words": [_word_text(word, spaced) for word in words],
            "witnesses": [_word_text(word, spaced) for word in witnesses],
        }
        _emit(data, fmt, [data["words"] and ",".join(data["words"]) or ""])
        return EXIT_OK
    raise CommandError(EXIT_USAGE, f"unknown vertex command {args.vertex_command!r}")


# -- sft ------------------------------------------------------------------


def cmd_sft(args, config: RunConfig) -> int:
    try:
        presentation = parse_forbidden(_read_file(args.forbidden))
    except ValueError as err:
        raise CommandError(EXIT_DATA, f"bad forbidden-block file {args.forbidden}: {err}") from err
    try:
        recoded = higher_block(presentation)
    except DegenerateShiftError as err:
        raise CommandError(EXIT_DATA, f"degenerate shift: {err}") from err
    shift = recoded.shift
    cycle_counts = periodic_counts(shift, shift.size)
    if all(cycle_counts[n] == 0 for n in range(1, shift.size + 1)):
        raise CommandError(
            EXIT_DATA,
            "degenerate shift: the block graph has no cycles, so no bi-infinite sequences remain",
        )
    blocks = shift.alphabet.symbols
    if args.set:
        distinguished = tuple(token for token in args.set.split(",") if token)
        missing = [token for token in distinguished if token not in blocks]
        if missing:
            raise CommandError(
                EXIT_USAGE, f"unknown block symbols {missing}; choose from {list(blocks)}"
            )
    else:
        head = presentation.alphabet.symbols[0]
        distinguished = tuple(
            blocks[i] for i in range(len(blocks)) if recoded.label(i) == head
        )
    matrix = first_return_matrix(shift, distinguished, args.order)
    table = {
        f"{s}->{t}": [int(series.coefficient(n)) for n in range(args.order + 1)]
        for (s, t), series in matrix.items()
    }
    scales = {
        start: distinguished_set_scales(
            shift, distinguished, args.order, start=start, cap=config.cap
        ).to_json()
        for start in distinguished
    }
    data = {
        "blocks": list(blocks),
        "distinguished": list(distinguished),
        "first_return": table,
        "scales": scales,
    }
    lines = [f"blocks: {' '.join(blocks)}", f"distinguished: {' '.join(distinguished)}"]
    lines += [f"{pair}: {','.join(str(c) for c in coeffs)}" for pair, coeffs in sorted(table.items())]
    for start in distinguished:
        sizes = {entry["n"]: len(entry["scales"]) for entry in scales[start]["sets"]}
        lines.append(f"scales from {start}: " + ",".join(str(sizes[n]) for n in sorted(sizes)))
    _emit(data, config.format_or("json"), lines)
    return EXIT_OK


# -- subst ----------------------------------------------------------------


def cmd_subst(args, config: RunConfig) -> int:
    if args.preset:
        morphism = PRESETS[args.preset]
    else:
        try:
            morphism = morphism_from_json(_read_file(args.rules))
        except ValueError as err:
            raise CommandError(EXIT_DATA, f"bad rules file {args.rules}: {err}") from err
    study = substitution_scales(morphism, args.n)
    data = study.to_json()
    data["transversal"] = [list(comp) for comp in sorted(transversal_of(study.combined))]
    lines = [
        f"scales: {len(study.combined)}",
        f"transversal_dim: {study.transversal_dim}",
        f"orbital_dim: {study.orbital_dim}",
    ]
    lines += [",".join(str(k) for k in comp) for comp in sorted(study.combined)]
    _emit(data, config.format_or("json"), lines)
    return EXIT_OK


# -- verify ---------------------------------------------------------------


def cmd_verify(args, config: RunConfig) -> int:
    results = run_reference_suite(args.max_n)
    fmt = config.format_or("text")
    failed = False
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        summary = f"CHECK {result.number} ({result.label}): {status} ({len(result.reports)} rows)"
        if fmt == "json":
            for report in result.reports:
                print(json.dumps(report.to_json(), ensure_ascii=False, sort_keys=True))
            print(summary, file=sys.stderr)
        else:
            print(summary)
            for report in result.failures():
                print("  " + json.dumps(report.to_json(), ensure_ascii=False, sort_keys=True))
        failed = failed or not result.passed
    return EXIT_DATA if failed else EXIT_OK


# -- oeis -----------------------------------------------------------------


def _parse_bfile(text: str) -> list[int]:
    values = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ValueError(f"bad b-file line: {line!r}")
        values.append(int(fields[1]))
    if not values:
        raise ValueError("b-file holds no terms")
    return values


def _fetch_bfile(sequence_id: str) -> str:
    url = f"https://oeis.org/{sequence_id}/b{sequence_id[1:]}.txt"
    with urllib.request.urlopen(url, timeout=10) as response:
        return response.read().decode("utf-8")


def cmd_oeis(args, config: RunConfig) -> int:
    sequence_id = args.id
    if len(sequence_id) != 7 or sequence_id[0] != "A" or not sequence_id[1:].isdigit():
        raise CommandError(EXIT_USAGE, f"bad sequence id {sequence_id!r}, expected Annnnnn")
    try:
        coeffs = [int(tok) for tok in args.coeffs.split(",") if tok.strip()]
    except ValueError as err:
        raise CommandError(EXIT_USAGE, f"bad --coeffs: {err}") from err
    if not coeffs:
        raise CommandError(EXIT_USAGE, "--coeffs needs at least one integer")
    text = None
    source = "snapshot"
    if not args.offline:
        try:
            text = _fetch_bfile(sequence_id)
            source = "oeis.org"
        except (urllib.error.URLError, OSError, TimeoutError) as err:
            print(f"warning: fetch failed ({err}); using bundled snapshot", file=sys.stderr)
    if text is None:
        path = config.fixtures / f"b{sequence_id[1:]}.txt"
        if not path.exists():
            raise CommandError(EXIT_DATA, f"no bundled snapshot for {sequence_id} at {path}")
        text = path.read_text(encoding="utf-8")
    try:
        values = _parse_bfile(text)
    except ValueError as err:
        raise CommandError(EXIT_DATA, f"unreadable b-file for {sequence_id}: {err}") from err
    data = {
        "id": sequence_id,
        "source": source,
        "compared": len(coeffs),
        "available": len(values),
    }
    if len(coeffs) > len(values):
        data["match"] = False
        data["reason"] = "prefix longer than the snapshot"
        _emit(data, config.format_or("text"), [f"mismatch: {data['reason']}"])
        return EXIT_DATA
    for i, (given, known) in enumerate(zip(coeffs, values)):
        if given != known:
            data["match"] = False
            data["first_mismatch"] = {"position": i, "given": given, "expected": known}
            _emit(
                data,
                config.format_or("text"),
                [f"mismatch at position {i}: given {given}, expected {known}"],
            )
            return EXIT_DATA
    data["match"] = True
    _emit(data, config.format_or("text"), ["match"])
    return EXIT_OK


# -- parser ---------------------------------------------------------------


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scaleshift",
        description="Exact scale combinatorics over shift spaces.",
    )
    parser.add_argument("--format", choices=("json", "text"), default=None)
    parser.add_argument("--order", type=_positive_int, default=None, help="truncation order")
    parser.add_argument("--cap", type=_positive_int, default=DEFAULT_CAP)
    parser.add_argument("--fixtures", default=None, help="snapshot directory")
    commands = parser.add_subparsers(dest="command", required=True)

    wheels = commands.add_parser("wheels", help="count cyclic composition classes")
    wheels.add_argument("--n", type=_positive_int, required=True)
    wheels.add_argument("--parts", default="all", help="'all', 'k+', or comma-separated sizes")
    wheels.add_argument("--by-length", action="store_true")
    wheels.set_defaults(handler=cmd_wheels)

    vertex = commands.add_parser("vertex", help="vertex shift computations")
    vertex.add_argument("vertex_command", choices=("zeta", "loops", "dims", "global", "language"))
    vertex.add_argument("--matrix", required=True)
    vertex.add_argument("--symbol", default=None)
    vertex.add_argument("--order", type=_positive_int, default=None)
    vertex.add_argument("--bivariate", action="store_true")
    vertex.set_defaults(handler=cmd_vertex)

    sft = commands.add_parser("sft", help="shift of finite type computations")
    sft_commands = sft.add_subparsers(dest="sft_command", required=True)
    sft_scales = sft_commands.add_parser("scales", help="scales via the distinguished block set")
    sft_scales.add_argument("--forbidden", required=True)
    sft_scales.add_argument("--set", default=None, help="comma-separated block symbols")
    sft_scales.add_argument("--order", type=_positive_int, required=True)
    sft_scales.set_defaults(handler=cmd_sft)

    subst = commands.add_parser("subst", help="substitution fixed-point computations")
    subst_commands = subst.add_subparsers(dest="subst_command", required=True)
    subst_scales = subst_commands.add_parser("scales", help="scales of stabilized blocks")
    source = subst_scales.add_mutually_exclusive_group(required=True)
    source.add_argument("--preset", choices=sorted(PRESETS))
    source.add_argument("--rules", help="morphism JSON file")
    subst_scales.add_argument("--n", type=_positive_int, required=True)
    subst_scales.set_defaults(handler=cmd_subst)

    verify = commands.add_parser("verify", help="run a regression suite")
    verify.add_argument("--suite", choices=("paper",), required=True)
    verify.add_argument("--max-n", type=_positive_int, default=10, dest="max_n")
    verify.set_defaults(handler=cmd_verify)

    oeis = commands.add_parser("oeis", help="sequence snapshot checks")
    oeis_commands = oeis.add_subparsers(dest="oeis_command", required=True)
    oeis_check = oeis_commands.add_parser("check", help="compare coefficients with a b-file")
    oeis_check.add_argument("--id", required=True)
    oeis_check.add_argument("--coeffs", required=True)
    oeis_check.add_argument("--offline", action="store_true")
    oeis_check.set_defaults(handler=cmd_oeis)

    return parser


def _resolve_fixtures(flag_value: str | None) -> Path:
    if flag_value:
        return Path(flag_value)
    env_value = os.environ.get(FIXTURES_ENV)
    if env_value:
        return Path(env_value)
    return Path(__file__).parent / "fixtures"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_request:
        return exit_request.code if isinstance(exit_request.code, int) else EXIT_USAGE
    try:
        config = RunConfig(
            order=args.order if getattr(args, "order", None) is not None else DEFAULT_ORDER,
            fmt=args.format,
            cap=args.cap,
            fixtures=_resolve_fixtures(args.fixtures),
        )
        return args.handler(args, config)
    except CommandError as err:
        print(f"error: {err}", file=sys.stderr)
        return err.code
    except ReducibleShiftError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PRECONDITION
    except EnumerationCapError as err:
        print(f"error: {err}; lower --order or raise --cap", file=sys.stderr)
        return EXIT_PRECONDITION
    except (DegenerateShiftError, StabilizationError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
