"""Report assembly, canonical serialization and golden comparison.

Reports are plain dicts serialized as JSON with sorted keys, so two runs
with the same configuration produce byte-identical files.  Field elements
are printed as polynomial strings over the prime subfield.  The `timing`
subtree is informational and ignored by the golden diff.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .adjoint import (
    adjoint_module,
    enveloping_setup,
    fixed_points,
    g_algebra_check,
    hochschild_block_dims,
    hochschild_whole_dims,
    verify_center,
    verify_eckmann_shapiro,
    verify_krull,
    verify_nilpotents,
    verify_relative,
    verify_same,
)
from .blocks import center_basis, local_principal_structure
from .corpus import corpus_names
from .hopf import validate_hopf
from .pipoints import (
    Unsupported,
    block_pi_support,
    example_xN,
    flat_points_of_block,
    flat_test,
    flat_map_classes,
    flatness_criteria_sample,
    induced_kernel,
    verify_defect,
    verify_equiv,
    verify_homeo_local,
    verify_injective,
    verify_kernel_lemma,
    verify_xN,
)
from .varieties import proj_connected, rep_type_classify
from .workspace import Workspace

VERIFY_NAMES = [
    "center",
    "same",
    "relative",
    "krull",
    "nilpotents",
    "localunipotent",
    "eckmann-shapiro",
    "kernel-lemma",
    "xN-example",
    "equiv",
    "injective",
    "homeo-local",
    "defect",
    "rep-type",
]

SECTION_TASKS = ["info", "blocks", "cohomology", "support", "adjoint", "hochschild", "pipoints"]


@dataclass
class RunConfig:
    algebra: str
    cap: int = 10
    seed: int = 0xB10C
    budget: int = 20000
    field_q: int | None = None
    slow: bool = False

    def as_dict(self):
        return {
            "algebra": self.algebra,
            "cap": self.cap,
            "seed": self.seed,
            "budget": self.budget,
            "field_q": self.field_q,
            "slow": self.slow,
        }


def _status_of(rep):
    return rep.get("status", "pass")


def section_info(ws: Workspace, cfg: RunConfig):
    a = ws.algebra
    v = validate_hopf(a)
    return {
        "name": a.name,
        "fingerprint": a.fingerprint(),
        "field": {"p": a.field.p, "e": a.field.e, "modulus": list(a.field.modulus)},
        "dim": a.dim,
        "labels": list(a.labels),
        "hopf_axioms": {c.name: bool(c.ok) for c in v.checks},
        "valid": bool(v.ok),
        "field_extended_for_blocks": bool(ws.decomposition.extended),
    }, [("hopf-axioms", "pass" if v.ok else "fail")]


def section_blocks(ws: Workspace, cfg: RunConfig):
    out = {"count": len(ws.blocks), "principal_index": ws.principal_index, "blocks": []}
    for i, b in enumerate(ws.blocks):
        bops = ws.block_ops(i)
        out["blocks"].append(
            {
                "index": i,
                "dim": b.dim,
                "idempotent": ws.algebra.fmt_element(b.idempotent),
                "radical_dim": int(bops.radical.shape[0]),
                "simple_dims": sorted(s.dim for s in bops.simples),
                "center_dim": int(center_basis(b).shape[0]),
            }
        )
    out["splitting_certificate"] = _fmt_cert(ws.decomposition.certificate)
    return out, []


def _fmt_cert(node):
    out = {"dim": node.get("dim"), "status": node.get("status")}
    if "children" in node:
        out["children"] = [_fmt_cert(c) for c in node["children"]]
    return out


def section_cohomology(ws: Workspace, cfg: RunConfig):
    ring = ws.ring
    return {
        "cap": ring.cap,
        "ring_degrees": list(ring.ring_degrees),
        "piece_dims": [int(x) for x in ring.piece_dims],
        "generators": [{"degree": d, "name": n} for d, n, _ in ring.generators],
        "relations": [str(r) for r in ring.relations],
    }, []


def section_support(ws: Workspace, cfg: RunConfig):
    out = {"blocks": []}
    verdicts = []
    for i in range(len(ws.blocks)):
        v = ws.block_variety(i)
        conn = proj_connected(v)
        rt = rep_type_classify(v)
        entry = {
            "index": i,
            "ideal": v.ideal.fmt(),
            "dim": v.dim,
            "components": None if v.components is None else [c[1].fmt() for c in v.components],
            "proj_connected": conn,
            "rep_type": rt,
        }
        if rt == "simple_algebra":
            entry["radical_is_zero"] = bool(ws.block_ops(i).radical.shape[0] == 0)
        out["blocks"].append(entry)
    return out, verdicts


def section_adjoint(ws: Workspace, cfg: RunConfig):
    rep = verify_center(ws)
    galg = {str(i): g_algebra_check(ws, i) for i in range(len(ws.blocks))}
    return {
        "fixed_points_vs_center": rep,
        "multiplication_is_module_map": galg,
    }, [("center", rep["status"])]


def section_hochschild(ws: Workspace, cfg: RunConfig):
    whole, _ = hochschild_whole_dims(ws)
    per = {}
    sums = [0] * (ws.cap + 1)
    for i in range(len(ws.blocks)):
        dims, _ = hochschild_block_dims(ws, i)
        per[str(i)] = dims
        sums = [s + x for s, x in zip(sums, dims)]
    env = enveloping_setup(ws, run_large=ws.slow)
    return {
        "whole": whole,
        "per_block": per,
        "block_sums_match": sums == whole,
        "hh0_equals_center_dim": whole[0] == int(center_basis(ws.algebra).shape[0]),
        "enveloping": env,
    }, [("hh-block-sum", "pass" if sums == whole else "fail"),
        ("enveloping", env["status"])]


def section_pipoints(ws: Workspace, cfg: RunConfig):
    out = {}
    verdicts = []
    try:
        classes, exhausted = flat_map_classes(ws)
        entries = []
        for sig, fm, lemma in classes:
            data = induced_kernel(ws, fm)
            entries.append(
                {
                    "element": fm.label(),
                    "jordan_type": list(fm.jordan),
                    "kernel": [str(g) for g in data["ideal"].gens],
                    "lemma_kernel": bool(lemma),
                }
            )
        out["flat_classes"] = entries
        out["exhaustive"] = bool(exhausted)
    except Unsupported as exc:
        out["flat_classes"] = f"unsupported: {exc}"
    try:
        support = {}
        for i in range(len(ws.blocks)):
            s = block_pi_support(ws, i)
            support[str(i)] = {
                "classes": [
                    {
                        "element": fm.label(),
                        "kernel": [str(g) for g in ideal.gens],
                        "witness_subgroup": wit,
                        "hits": hits,
                    }
                    for (fm, ideal, wit), hits in zip(s.classes, s.hits)
                ],
            }
        out["block_support"] = support
    except Unsupported as exc:
        out["block_support"] = f"unsupported: {exc}"
    fb = {}
    for i in range(len(ws.blocks)):
        s = flat_points_of_block(ws, i)
        fb[str(i)] = {
            "class_count": len(s.classes),
            "classes": [
                {"element": fm.label(), "hits": hits}
                for (fm, _, _), hits in zip(s.classes, s.hits)
            ],
            "exhaustive": bool(s.exhaustive),
        }
    out["flat_points_of_blocks"] = fb
    sample = flatness_criteria_sample(ws, min(1000, cfg.budget))
    out["flatness_criteria_sample"] = sample
    verdicts.append(("flatness-criteria", "pass" if sample["criteria_agree"] else "fail"))
    return out, verdicts


def run_verify(ws: Workspace, cfg: RunConfig, name: str):
    """One named verification; returns a report dict with a status field."""
    try:
        if name == "center":
            return verify_center(ws)
        if name == "same":
            reps = {str(i): verify_same(ws, i) for i in range(len(ws.blocks))}
            status = "pass" if all(r["status"] == "pass" for r in reps.values()) else "fail"
            return {"status": status, "blocks": reps}
        if name == "relative":
            reps = {str(i): verify_relative(ws, i) for i in range(len(ws.blocks))}
            status = "pass" if all(r["status"] == "pass" for r in reps.values()) else "fail"
            return {"status": status, "blocks": reps}
        if name == "krull":
            reps = {str(i): verify_krull(ws, i) for i in range(len(ws.blocks))}
            sts = [r["status"] for r in reps.values()]
            status = "fail" if "fail" in sts else ("inconclusive" if "inconclusive" in sts else "pass")
            return {"status": status, "blocks": reps}
        if name == "nilpotents":
            return verify_nilpotents(ws)
        if name == "localunipotent":
            g = getattr(ws.input_algebra, "group", None)
            if g is None:
                return {"status": "unsupported", "reason": "needs a constant group"}
            try:
                rep = local_principal_structure(g, ws.input_algebra.field, seed=ws.seed)
            except ValueError as exc:
                return {"status": "unsupported", "reason": str(exc)}
            return {
                "status": "pass" if rep.ok else "fail",
                "normal_subgroup": rep.normal_subgroup,
                "quotient_unipotent": rep.quotient_unipotent,
                "kN_semisimple": rep.kN_semisimple,
                "iso_check": rep.iso_check,
                "kernel_containment": rep.kernel_containment,
                "principal_dim": rep.principal_dim,
                "quotient_order": rep.quotient_order,
            }
        if name == "eckmann-shapiro":
            return verify_eckmann_shapiro(ws)
        if name == "kernel-lemma":
            return verify_kernel_lemma(ws)
        if name == "xN-example":
            g = getattr(ws.algebra, "group", None)
            if g is None:
                return {"status": "unsupported", "reason": "needs a constant group"}
            return verify_xN(g, ws.algebra.field)
        if name == "equiv":
            classes, _ = flat_map_classes(ws)
            reps = {}
            for idx, (sig, fm, _) in enumerate(classes):
                reps[str(idx)] = verify_equiv(ws, fm, check_mechanism=(fm.target.dim <= 8))
            status = "pass" if reps and all(r["status"] == "pass" for r in reps.values()) else (
                "inconclusive" if not reps else "fail"
            )
            return {"status": status, "classes": reps}
        if name == "injective":
            reps = {str(i): verify_injective(ws, i) for i in range(len(ws.blocks))}
            status = "pass" if all(r["status"] == "pass" for r in reps.values()) else "fail"
            return {"status": status, "blocks": reps}
        if name == "homeo-local":
            return verify_homeo_local(ws)
        if name == "defect":
            reps = {}
            sts = []
            for i in range(len(ws.blocks)):
                try:
                    reps[str(i)] = verify_defect(ws, i)
                except Unsupported as exc:
                    reps[str(i)] = {"status": "unsupported", "reason": str(exc)}
                sts.append(reps[str(i)]["status"])
            considered = [s for s in sts if s != "unsupported"]
            status = (
                "unsupported"
                if not considered
                else ("fail" if "fail" in considered else "pass")
            )
            return {"status": status, "blocks": reps}
        if name == "rep-type":
            out = {}
            ok = True
            for i in range(len(ws.blocks)):
                v = ws.block_variety(i)
                rt = rep_type_classify(v)
                entry = {"dim": v.dim, "rep_type": rt}
                if rt == "simple_algebra":
                    simple = ws.block_ops(i).radical.shape[0] == 0
                    entry["block_is_simple_algebra"] = bool(simple)
                    ok &= simple
                out[str(i)] = entry
            return {"status": "pass" if ok else "fail", "blocks": out}
    except Unsupported as exc:
        return {"status": "unsupported", "reason": str(exc)}
    raise ValueError(f"unknown verify task {name!r}")


SECTION_BUILDERS = {
    "info": section_info,
    "blocks": section_blocks,
    "cohomology": section_cohomology,
    "support": section_support,
    "adjoint": section_adjoint,
    "hochschild": section_hochschild,
    "pipoints": section_pipoints,
}


def run_task(ws: Workspace, cfg: RunConfig, task: str):
    """Build the report for one task; returns (report, exit_code)."""
    t0 = time.time()
    report = {
        "tool": {"name": "blockscope", "version": __version__, "schema": 1},
        "config": cfg.as_dict(),
        "algebra": ws.algebra.name,
        "fingerprint": ws.algebra.fingerprint(),
    }
    verdicts = {}
    requested_unsupported = False
    if task in SECTION_BUILDERS:
        data, vs = SECTION_BUILDERS[task](ws, cfg)
        report[task] = data
        for n, s in vs:
            verdicts[n] = s
    elif task == "all":
        for name in SECTION_TASKS:
            data, vs = SECTION_BUILDERS[name](ws, cfg)
            report[name] = data
            for n, s in vs:
                verdicts[n] = s
        report["verify"] = {}
        for name in VERIFY_NAMES:
            rep = run_verify(ws, cfg, name)
            report["verify"][name] = rep
            verdicts[name] = _status_of(rep)
    elif task == "verify:all":
        report["verify"] = {}
        for name in VERIFY_NAMES:
            rep = run_verify(ws, cfg, name)
            report["verify"][name] = rep
            verdicts[name] = _status_of(rep)
    elif task.startswith("verify:"):
        name = task.split(":", 1)[1]
        if name not in VERIFY_NAMES:
            raise ValueError(f"unknown verify task {name!r}; known: {', '.join(VERIFY_NAMES)}")
        rep = run_verify(ws, cfg, name)
        report["verify"] = {name: rep}
        verdicts[name] = _status_of(rep)
        requested_unsupported = _status_of(rep) == "unsupported"
    else:
        raise ValueError(f"unknown task {task!r}")
    report["verdicts"] = verdicts
    report["inconclusive"] = sorted(
        [n for n, s in verdicts.items() if s == "inconclusive"]
    )
    report["timing"] = {"seconds": round(time.time() - t0, 3)}
    if requested_unsupported:
        code = 3
    elif any(s == "fail" for s in verdicts.values()):
        code = 2
    else:
        code = 0
    return report, code


def report_text(report) -> str:
    return json.dumps(_plain(report), sort_keys=True, indent=1) + "\n"


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, np.ndarray):
        return [_plain(v) for v in x.tolist()]
    return x


IGNORED_IN_DIFF = {"timing"}


def compare_golden(report, golden) -> list[str]:
    """Paths that differ, ignoring timing; empty list means acceptance."""
    diffs = []

    def walk(a, b, path):
        if path and path[0] in IGNORED_IN_DIFF:
            return
        if isinstance(a, dict) and isinstance(b, dict):
            for k in sorted(set(a) | set(b)):
                if k not in a:
                    diffs.append("/".join(path + [str(k)]) + " (missing in report)")
                elif k not in b:
                    diffs.append("/".join(path + [str(k)]) + " (missing in golden)")
                else:
                    walk(a[k], b[k], path + [str(k)])
            return
        if isinstance(a, list) and isinstance(b, list):
            if len(a) != len(b):
                diffs.append("/".join(path) + f" (length {len(a)} != {len(b)})")
                return
            for i, (x, y) in enumerate(zip(a, b)):
                walk(x, y, path + [str(i)])
            return
        if a != b:
            diffs.append("/".join(path) + f" ({a!r} != {b!r})")

    walk(_plain(report), _plain(golden), [])
    return diffs
