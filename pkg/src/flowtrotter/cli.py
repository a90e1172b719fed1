"""``flowtrotter compile|verify|bench``.

Exit codes: 0 success, 1 verification failure, 2 configuration or
admissibility error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from .circuit import Tableau
from .config import ConfigError, RunConfig, load_config
from .encodings import (ONE_D_VARIANTS, Encoding, EncodingName, build_encoding, encode_1d_variant,
                        kw_dual_encode, validate_encoding)
from .exact import free_fermion_spectrum_check, flow_set_exactness
from .flowsets import (check_coverage, strategy_flow_sets, verify_flow_property,
                       verify_nonoverlap_after_encoding)
from .lattice import Lattice, build_chain
from .serialize import circuit_to_json, to_qasm
from .synthesis import EncoderVerificationError, SynthesisError, component_stabilizers, verify_encoder
from .trotter import (LITERATURE_DEPTHS, CompilationPlan, InadmissiblePlan, compile_evolution,
                      compile_flow_set_factor, depth_report)

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2
DENSE_CAP = 12
DENSE_TOL = 1e-10
SPECTRUM_TOL = 1e-8
TWO_D = (EncodingName.JW, EncodingName.VC, EncodingName.DK, EncodingName.GSE)


def _dump(obj: Any) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _emit(cfg: RunConfig, files: dict[str, str], stdout_text: str) -> None:
    if cfg.out:
        out = Path(cfg.out)
        out.mkdir(parents=True, exist_ok=True)
        for name, text in files.items():
            (out / name).write_text(text)
    sys.stdout.write(stdout_text)


def _encoding_for(name: EncodingName, lattice: Lattice) -> Encoding:
    try:
        return build_encoding(name, lattice)
    except ValueError as exc:
        raise ConfigError(f"{name.value} on {lattice}: {exc}") from None


# -- compile -------------------------------------------------------------------------------

def cmd_compile(cfg: RunConfig) -> int:
    name = cfg.encoding_name
    if name == "all":
        raise ConfigError("compile needs a single encoding")
    lattice = cfg.build_lattice()
    _encoding_for(name, lattice)
    strategy = cfg.strategy_for(name)
    try:
        plan = CompilationPlan(name, strategy, cfg.dt, cfg.j)
        tc = compile_evolution(plan, lattice, cfg.steps)
    except InadmissiblePlan as exc:
        sys.stderr.write(f"inadmissible: {exc}\n")
        return EXIT_CONFIG
    except (ValueError, SynthesisError) as exc:
        raise ConfigError(str(exc)) from None
    report = depth_report(tc)
    report.update({"strategy": strategy, "steps": cfg.steps, "dt": cfg.dt, "J": cfg.j,
                   "depth_mode": cfg.depth_mode,
                   "depth": report["depth_native" if cfg.depth_mode == "native" else "depth_cx_decomposed"]})
    fmt = cfg.format or "json"
    circuit_text = to_qasm(tc.circuit) if fmt == "qasm" else circuit_to_json(tc.circuit)
    files = {f"circuit.{fmt}": circuit_text, "report.json": _dump(report)}
    _emit(cfg, files, _dump(report))
    return EXIT_OK


# -- verify -------------------------------------------------------------------------------

def _verify_targets(cfg: RunConfig) -> list[tuple[Encoding, str]]:
    if cfg.encoding_file:
        try:
            enc = Encoding.from_dict(json.loads(Path(cfg.encoding_file).read_text()))
        except (OSError, ValueError, KeyError) as exc:
            raise ConfigError(f"cannot load encoding file {cfg.encoding_file}: {exc}") from None
        return [(enc, "line" if enc.lattice.height == 1 else cfg.strategy_for(enc.name))]
    lattice = cfg.build_lattice()
    name = cfg.encoding_name
    if name != "all":
        enc = _encoding_for(name, lattice)
        return [(enc, "line" if lattice.height == 1 else cfg.strategy_for(name))]
    out = []
    for n in TWO_D:
        if n == EncodingName.JW and lattice.height > 1:
            continue          # 2D strings overlap; JW is checked on the chain below
        try:
            enc = build_encoding(n, lattice)
        except ValueError:
            continue
        out.append((enc, "line" if lattice.height == 1 else cfg.strategy_for(n)))
    length = lattice.width
    if length >= 2:
        if lattice.height > 1:
            out.append((build_encoding(EncodingName.JW, build_chain(length)), "line"))
        out.append((kw_dual_encode(length), "line"))
        for cat in ONE_D_VARIANTS:
            for bc in ("open", "periodic"):
                try:
                    out.append((encode_1d_variant(cat, length, bc), "line"))
                    break
                except ValueError:
                    continue
    return out


def _algebra(enc: Encoding, strategy: str) -> dict:
    rep = validate_encoding(enc)
    res: dict[str, Any] = {"encoding": rep.to_dict()}
    problems = [f"{v['a']} vs {v['b']}: majorana_commute={v['majorana_commute']}, "
                f"pauli_commute={v['pauli_commute']}" for v in res["encoding"]["violations"]]
    problems += [f"product: {p}" for p in rep.product_failures]
    problems += [f"non-hermitian: {p}" for p in rep.non_hermitian]
    try:
        sets = strategy_flow_sets(enc.lattice, "petal" if strategy == "petal-baseline" else strategy)
    except ValueError as exc:
        problems.append(f"flow sets: {exc}")
        sets = []
    if sets and not check_coverage(enc.lattice, sets):
        problems.append("flow sets do not cover every directed edge exactly once")
    flows = []
    for fs in sets:
        fr = verify_flow_property(fs, enc.lattice.n_sites)
        ov = verify_nonoverlap_after_encoding(fs, enc)
        flows.append({"label": fs.label, "flow_property": fr.ok, "disjoint_supports": ov.ok})
        problems += [f"{fs.label}: {a} and {b} do not commute" for a, b in fr.violations]
        if not ov.ok:
            problems.append(ov.describe(enc))
    res["flow_sets"] = flows
    res["problems"] = problems
    return res


def _tableau(enc: Encoding, strategy: str, cfg: RunConfig) -> dict:
    problems = []
    sets_out = []
    if strategy == "petal-baseline":
        return {"problems": [], "flow_sets": [], "note": "no encoders in the baseline"}
    for fs in strategy_flow_sets(enc.lattice, strategy):
        if not fs.components:
            continue
        try:
            factor = compile_flow_set_factor(enc, fs, cfg.j, cfg.dt)
        except (InadmissiblePlan, SynthesisError, EncoderVerificationError) as exc:
            problems.append(f"{fs.label}: {exc}")
            continue
        comps = []
        for comp, e in zip(fs.components, factor.encoders):
            stabs = component_stabilizers(enc, comp)
            tab = Tableau.from_circuit(e.circuit)
            try:
                verify_encoder(e.circuit, stabs)
                images = [str(tab.conjugate(s)) for s in stabs]
            except EncoderVerificationError as exc:
                problems.append(f"{fs.label} {comp}: {exc}")
                continue
            comps.append({"component": str(comp), "category": e.category.value,
                          "depth": e.depth("cx"), "images": images})
        sets_out.append({"label": fs.label, "components": comps})
    return {"problems": problems, "flow_sets": sets_out}


def _dense(enc: Encoding, strategy: str, cfg: RunConfig) -> dict:
    problems = []
    rows = []
    if strategy != "petal-baseline":
        for fs in strategy_flow_sets(enc.lattice, strategy):
            if not fs.components:
                continue
            try:
                d = flow_set_exactness(enc, fs, cfg.j, cfg.dt)
            except (InadmissiblePlan, SynthesisError) as exc:
                problems.append(f"{fs.label}: {exc}")
                continue
            rows.append({"label": fs.label, "distance": d, "ok": d <= DENSE_TOL})
            if d > DENSE_TOL:
                problems.append(f"{fs.label}: factor differs from exp(-i dt H_set) by {d:.3e}")
    spec = free_fermion_spectrum_check(enc, J=cfg.j, tol=SPECTRUM_TOL)
    if not spec["ok"]:
        problems.append("free-fermion spectrum mismatch")
    return {"problems": problems, "flow_set_exactness": rows, "dt": cfg.dt, "tolerance": DENSE_TOL,
            "spectrum": spec}


def cmd_verify(cfg: RunConfig) -> int:
    levels = ("algebra", "tableau", "dense")[: ("algebra", "tableau", "dense").index(cfg.verify) + 1]
    targets = _verify_targets(cfg)
    if "dense" in levels:
        big = [f"{e.name.value} ({e.n_qubits} qubits)" for e, _ in targets if e.n_qubits > DENSE_CAP]
        if big:
            raise ConfigError(f"dense verification is capped at {DENSE_CAP} qubits: {', '.join(big)}")
    results = []
    all_ok = True
    for enc, strategy in targets:
        entry: dict[str, Any] = {"encoding": enc.name.value, "lattice": str(enc.lattice),
                                 "strategy": strategy, "qubits": enc.n_qubits}
        problems: list[str] = []
        for level in levels:
            res = {"algebra": lambda: _algebra(enc, strategy),
                   "tableau": lambda: _tableau(enc, strategy, cfg),
                   "dense": lambda: _dense(enc, strategy, cfg)}[level]()
            entry[level] = res
            problems += res["problems"]
        entry["ok"] = not problems
        entry["problems"] = problems
        all_ok &= not problems
        results.append(entry)
    report = {"level": cfg.verify, "ok": all_ok, "results": results}
    lines = [f"{'PASS' if r['ok'] else 'FAIL'} {r['encoding']} {r['lattice']} {r['strategy']}"
             + "".join(f"\n  - {p}" for p in r["problems"]) for r in results]
    _emit(cfg, {"verify.json": _dump(report)}, "\n".join(lines) + "\n")
    return EXIT_OK if all_ok else EXIT_FAIL


# -- bench --------------------------------------------------------------------------------

BENCH_COLUMNS = ("encoding", "lattice", "strategy", "qubits", "ratio", "cx_depth", "swap_layers",
                 "two_qubit_gates", "note")
NOTE_WIDTH = 60


def bench_rows(cfg: RunConfig) -> list[dict]:
    lattice = cfg.build_lattice()
    cases: list[tuple[EncodingName, Lattice, str]] = []
    for name in TWO_D:
        for strategy in ("line", "plaquette", "petal-baseline"):
            if strategy == "plaquette" and name != EncodingName.DK:
                continue
            cases.append((name, lattice, strategy))
    chain = build_chain(lattice.n_sites)
    cases.append((EncodingName.KW_DUAL, chain, "line"))
    cases.append((EncodingName.KW_DUAL, chain, "petal-baseline"))
    rows = []
    for name, lat, strategy in cases:
        row = {"encoding": name.value, "lattice": str(lat), "strategy": strategy}
        try:
            enc = build_encoding(name, lat)
        except ValueError as exc:
            rows.append({**row, "note": f"not applicable: {exc}"})
            continue
        try:
            rep = depth_report(compile_evolution(CompilationPlan(name, strategy, cfg.dt, cfg.j), lat, 1))
        except (InadmissiblePlan, ValueError) as exc:
            rows.append({**row, "qubits": enc.n_qubits, "ratio": round(enc.ratio, 3),
                         "note": f"inadmissible: {exc}"})
            continue
        rows.append({**row, "qubits": rep["qubits"], "ratio": round(rep["ratio"], 3),
                     "cx_depth": rep["cx_depth"], "swap_layers": rep["swap_layers"],
                     "two_qubit_gates": rep["two_qubit_gates"], "note": "compiled"})
    for label, depth in LITERATURE_DEPTHS.items():
        rows.append({"encoding": label, "strategy": "literature", "cx_depth": depth,
                     "note": "literature value, not compiled"})
    return rows


def format_table(rows: Sequence[dict]) -> str:
    def cell(r: dict, c: str) -> str:
        v = str(r.get(c, ""))
        return v if len(v) <= NOTE_WIDTH else v[: NOTE_WIDTH - 3] + "..."
    cells = [[cell(r, c) for c in BENCH_COLUMNS] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(BENCH_COLUMNS)]
    fmt = lambda vals: "  ".join(v.ljust(w) for v, w in zip(vals, widths)).rstrip()
    out = [fmt(BENCH_COLUMNS), fmt(["-" * w for w in widths])] + [fmt(r) for r in cells]
    return "\n".join(out) + "\n"


def cmd_bench(cfg: RunConfig) -> int:
    rows = bench_rows(cfg)
    text = _dump(rows) if cfg.format == "json" else format_table(rows)
    _emit(cfg, {"bench." + ("json" if cfg.format == "json" else "txt"): text}, text)
    return EXIT_OK


# -- entry point --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="INI file with a [run] section; flags override it")
    common.add_argument("--lattice", help="WxH, or N for a chain")
    common.add_argument("--bc", choices=("open", "periodic"))
    common.add_argument("--encoding", help="jw|vc|dk|gse|kw|jw-aug|ancilla3|toric4|ratio3to2|ratio2to1 (verify: all)")
    common.add_argument("--strategy", choices=("line", "plaquette", "petal", "petal-baseline"))
    common.add_argument("--dt", type=float)
    common.add_argument("--steps", type=int)
    common.add_argument("--j", type=float)
    common.add_argument("--out", help="output directory")
    common.add_argument("--format", choices=("qasm", "json"))
    common.add_argument("--depth-mode", dest="depth_mode", choices=("native", "cx"))
    common.add_argument("--verify", choices=("algebra", "tableau", "dense"))
    common.add_argument("--encoding-file", dest="encoding_file", help="JSON encoding to verify")
    parser = argparse.ArgumentParser(prog="flowtrotter", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("compile", parents=[common], help="compile Trotter steps to a circuit and depth report")
    sub.add_parser("verify", parents=[common], help="run the verification ladder")
    sub.add_parser("bench", parents=[common], help="depth comparison table")
    return parser


COMMANDS = {"compile": cmd_compile, "verify": cmd_verify, "bench": cmd_bench}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    overrides = {k: v for k, v in vars(args).items() if k not in ("command", "config")}
    try:
        cfg = load_config(args.config, overrides)
        return COMMANDS[args.command](cfg)
    except ConfigError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
