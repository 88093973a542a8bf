"""Command-line front end.

Subcommands: construct, spectrum, decay, count-aps, guarantee, verify,
smear.  Reports are emitted as deterministic JSON (17 significant
digits), flat text, or key,value CSV; reruns on identical inputs and
seeds are byte-identical.  Exit status 0 on success, 1 on parameter or
precondition errors, 2 on I/O or file-format errors.

An optional flat key=value config file can preload any flags of a
subcommand; explicitly given flags take precedence, and unknown keys or
flags are rejected.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from .apcount import (
    UniformityParams,
    ap_report,
    smearing_diagnostic,
    uniformity_guarantee,
    verify_pipeline,
)
from .errors import ConstructionError, ParameterError, SetFormatError
from .intsets import cantor_build, pad_to_odd, read_set, write_set
from .salemgen import SalemConfig, construct
from .serialize import dumps_stable, flatten, format_float
from .spectral import decay_fit, dft_indicator, spectrum_to_csv


class _CliError(Exception):
    """Command-line usage failure (maps to exit status 1)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: D102 - argparse hook
        raise _CliError(message)


_UNSET = object()


@dataclass(frozen=True)
class _Opt:
    flag: str
    dest: str
    kind: str  # int | float | str | bool | choice
    default: object = None
    required: bool = False
    choices: tuple[str, ...] | None = None
    help: str = ""

    @property
    def key(self) -> str:
        return self.flag.lstrip("-").replace("-", "_")


_IN = _Opt("--in", "in_path", "str", required=True, help="input set file")
_OUT = _Opt("--out", "out", "str", help="report destination (default stdout)")
_FORMAT = _Opt(
    "--format", "format", "choice", default="json", choices=("json", "text", "csv")
)
_CONFIG = _Opt("--config", "config", "str", help="flat key=value defaults file")

_COMMANDS: dict[str, list[_Opt]] = {
    "construct": [
        _Opt("--kind", "kind", "choice", required=True, choices=("cantor", "salem")),
        _Opt("--depth", "depth", "int", required=True),
        _Opt("--out", "out", "str", required=True, help="set file to write"),
        _Opt("--max-depth", "max_depth", "int", default=16),
        _Opt("--branching", "branching", "int"),
        _Opt("--keep", "keep", "int"),
        _Opt("--seed", "seed", "int", default=0),
        _Opt("--verify-blocks", "verify_blocks", "bool", default=False),
        _Opt("--eta", "eta", "float", help="override the block deviation ceiling"),
        _Opt("--max-retries", "max_retries", "int", default=64),
        _Opt("--full-range-check", "full_range_check", "bool", default=False),
        _Opt("--trace-out", "trace_out", "str", help="write the build trace JSON"),
        _FORMAT,
        _CONFIG,
    ],
    "spectrum": [
        _IN,
        _Opt("--out", "out", "str", required=True, help="CSV file to write"),
        _Opt("--digits", "digits", "int", default=15),
        _CONFIG,
    ],
    "decay": [
        _IN,
        _Opt("--beta", "beta", "float", help="fix the exponent instead of fitting"),
        _Opt("--k-min", "k_min", "int"),
        _Opt("--k-max", "k_max", "int"),
        _Opt("--symmetric", "symmetric", "bool", default=False),
        _FORMAT,
        _OUT,
        _CONFIG,
    ],
    "count-aps": [
        _IN,
        _Opt(
            "--method",
            "method",
            "choice",
            default="both",
            choices=("direct", "spectral", "both"),
        ),
        _Opt("--oddify", "oddify", "bool", default=True),
        _FORMAT,
        _OUT,
        _CONFIG,
    ],
    "guarantee": [
        _IN,
        _Opt("--alpha", "alpha", "float"),
        _Opt("--delta", "delta", "float"),
        _Opt("--epsilon", "epsilon", "float", default=0.05),
        _FORMAT,
        _OUT,
        _CONFIG,
    ],
    "verify": [
        _IN,
        _Opt("--fejer-k", "fejer_k", "str", default="auto"),
        _Opt("--beta", "beta", "float"),
        _Opt("--epsilon", "epsilon", "float", default=0.05),
        _Opt("--oddify", "oddify", "bool", default=True),
        _FORMAT,
        _OUT,
        _CONFIG,
    ],
    "smear": [_IN, _FORMAT, _OUT, _CONFIG],
}


def _add_option(parser: argparse.ArgumentParser, opt: _Opt) -> None:
    if opt.kind == "bool":
        parser.add_argument(
            opt.flag,
            dest=opt.dest,
            action=argparse.BooleanOptionalAction,
            default=_UNSET,
            help=opt.help,
        )
    elif opt.kind == "choice":
        parser.add_argument(
            opt.flag, dest=opt.dest, choices=opt.choices, default=_UNSET, help=opt.help
        )
    else:
        typ = {"int": int, "float": float, "str": str}[opt.kind]
        parser.add_argument(
            opt.flag, dest=opt.dest, type=typ, default=_UNSET, help=opt.help
        )


def _build_parser() -> _Parser:
    top = _Parser(prog="apspectra", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, opts in _COMMANDS.items():
        parser = sub.add_parser(name)
        for opt in opts:
            _add_option(parser, opt)
    return top


def _convert_config_value(opt: _Opt, raw: str):
    try:
        if opt.kind == "int":
            return int(raw)
        if opt.kind == "float":
            return float(raw)
        if opt.kind == "bool":
            low = raw.lower()
            if low in ("1", "true", "yes", "on"):
                return True
            if low in ("0", "false", "no", "off"):
                return False
            raise ValueError(f"not a boolean: {raw!r}")
        if opt.kind == "choice":
            if raw not in (opt.choices or ()):
                raise ValueError(f"must be one of {opt.choices}")
            return raw
        return raw
    except ValueError as exc:
        raise ParameterError(f"config value for {opt.flag}: {exc}") from exc


def _load_config(path: str) -> dict[str, str]:
    entries: dict[str, str] = {}
    text = Path(path).read_text()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParameterError(f"{path}:{lineno}: expected key=value")
        key, _, value = line.partition("=")
        entries[key.strip().replace("-", "_")] = value.strip()
    return entries


def _merge_defaults(ns: argparse.Namespace, opts: list[_Opt]) -> None:
    """Fill unset options from the config file, then from table defaults."""
    config_values: dict[str, str] = {}
    if getattr(ns, "config", _UNSET) not in (_UNSET, None):
        config_values = _load_config(ns.config)
    by_key = {o.key: o for o in opts}
    for key in config_values:
        if key not in by_key or key == "config":
            raise ParameterError(f"unknown config key {key!r}")
    for opt in opts:
        if getattr(ns, opt.dest) is not _UNSET:
            continue
        if opt.key in config_values:
            setattr(ns, opt.dest, _convert_config_value(opt, config_values[opt.key]))
        else:
            setattr(ns, opt.dest, opt.default)
    for opt in opts:
        if opt.required and getattr(ns, opt.dest) is None:
            raise ParameterError(f"missing required option {opt.flag}")


# ---------------------------------------------------------------------------
# Command handlers.  Each returns (payload, report_path); a None payload
# means the command already wrote its artifact.


def _cmd_construct(ns):
    if ns.kind == "cantor":
        s = cantor_build(ns.depth, max_depth=ns.max_depth)
        payload = {
            "command": "construct",
            "kind": "cantor",
            "depth": ns.depth,
            "ambient": s.ambient,
            "cardinality": len(s),
            "out": ns.out,
        }
    else:
        if ns.branching is None or ns.keep is None:
            raise ParameterError("salem construction needs --branching and --keep")
        config = SalemConfig(
            branching=ns.branching,
            keep=ns.keep,
            depth=ns.depth,
            seed=ns.seed,
            max_retries=ns.max_retries,
            eta_override=ns.eta,
            verify_blocks=bool(ns.verify_blocks),
            full_range_check=bool(ns.full_range_check),
        )
        trace = construct(config)
        s = trace.final
        if ns.trace_out:
            Path(ns.trace_out).write_text(dumps_stable(trace.to_dict()))
        payload = {
            "command": "construct",
            "kind": "salem",
            "config": config.to_dict(),
            "seed": config.seed,
            "ambient": s.ambient,
            "cardinality": len(s),
            "retriesTotal": sum(sum(rec.retries) for rec in trace.stages),
            "out": ns.out,
        }
    write_set(s, ns.out)
    return payload, None


def _cmd_spectrum(ns):
    s = read_set(ns.in_path)
    spectrum_to_csv(dft_indicator(s), ns.out, digits=ns.digits)
    return None, None


def _cmd_decay(ns):
    s = read_set(ns.in_path)
    k_range = None
    if ns.k_min is not None or ns.k_max is not None:
        lo = 1 if ns.k_min is None else ns.k_min
        hi = s.ambient - 1 if ns.k_max is None else ns.k_max
        k_range = (lo, hi)
    fit = decay_fit(
        dft_indicator(s), beta=ns.beta, k_range=k_range, symmetric=bool(ns.symmetric)
    )
    payload = {"command": "decay", "modulus": s.ambient, "decay": fit.to_dict()}
    return payload, ns.out


def _cmd_count_aps(ns):
    s = read_set(ns.in_path)
    used, oddified = s, False
    if s.ambient % 2 == 0 and ns.oddify:
        used, oddified = pad_to_odd(s), True
    report = ap_report(used, method=ns.method)
    payload = report.to_dict()
    payload["inputAmbient"] = s.ambient
    payload["oddified"] = oddified
    return payload, ns.out


def _cmd_guarantee(ns):
    s = read_set(ns.in_path)
    if ns.delta is not None and ns.alpha is None:
        raise ParameterError("--delta needs an explicit --alpha")
    if ns.delta is not None:
        params = UniformityParams(ns.delta, ns.alpha, ns.epsilon)
    else:
        params = UniformityParams.from_set(s, ns.epsilon, alpha=ns.alpha)
    report = uniformity_guarantee(s, params)
    payload = {"command": "guarantee", **report.to_dict()}
    return payload, ns.out


def _cmd_verify(ns):
    s = read_set(ns.in_path)
    oddified = False
    if s.ambient % 2 == 0 and ns.oddify:
        s, oddified = pad_to_odd(s), True
    if ns.fejer_k == "auto":
        cutoff = None
    else:
        try:
            cutoff = int(ns.fejer_k)
        except ValueError as exc:
            raise ParameterError(f"--fejer-k must be an integer or 'auto'") from exc
    report = verify_pipeline(s, cutoff=cutoff, beta=ns.beta, epsilon=ns.epsilon)
    payload = report.to_dict()
    payload["oddified"] = oddified
    return payload, ns.out


def _cmd_smear(ns):
    s = read_set(ns.in_path)
    report = smearing_diagnostic(s)
    if ns.format == "csv":
        lines = ["k,groupSum,bound,ratio"]
        for k in range(report.modulus):
            lines.append(
                ",".join(
                    [
                        str(k),
                        format_float(float(report.group_sums[k]), 15),
                        format_float(float(report.group_bounds[k]), 15),
                        format_float(float(report.ratios[k]), 15),
                    ]
                )
            )
        text = "\n".join(lines) + "\n"
        if ns.out:
            Path(ns.out).write_text(text)
        else:
            sys.stdout.write(text)
        return None, None
    return report.to_dict(), ns.out


_HANDLERS = {
    "construct": _cmd_construct,
    "spectrum": _cmd_spectrum,
    "decay": _cmd_decay,
    "count-aps": _cmd_count_aps,
    "guarantee": _cmd_guarantee,
    "verify": _cmd_verify,
    "smear": _cmd_smear,
}


def _emit_payload(payload: dict, fmt: str, out_path: str | None) -> None:
    if fmt == "json":
        text = dumps_stable(payload, float_digits=17)
    elif fmt == "text":
        lines = []
        for key, value in flatten(payload):
            if isinstance(value, float):
                value = format_float(value, 17)
            lines.append(f"{key} = {value}")
        text = "\n".join(lines) + "\n"
    elif fmt == "csv":
        lines = ["key,value"]
        for key, value in flatten(payload):
            if isinstance(value, float):
                value = format_float(value, 15)
            lines.append(f"{key},{value}")
        text = "\n".join(lines) + "\n"
    else:
        raise ParameterError(f"unknown format {fmt!r}")
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    try:
        ns = _build_parser().parse_args(argv)
        opts = _COMMANDS[ns.command]
        _merge_defaults(ns, opts)
        payload, report_path = _HANDLERS[ns.command](ns)
        if payload is not None:
            _emit_payload(payload, getattr(ns, "format", "json"), report_path)
        return 0
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ParameterError, ConstructionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, SetFormatError) as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
