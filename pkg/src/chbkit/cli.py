"""
Command-line front end.

    chbkit thd-table --from 3 --to 27
    chbkit waveform nls --levels 27 --vpeak 391.9 --out wave.csv
    chbkit design buck --vs 48.9 --vo 30.15 --fs 200000 --di 6 --dv 4
    chbkit design system --vll 480 --p 125000 --thd 0.05 --punit 25000

Output goes to stdout unless ``--out`` is given. Relative ``--out`` paths
are resolved against ``$CHBKIT_OUT_DIR`` when it is set. Files are written
to a temporary sibling and renamed, so a failed run leaves nothing behind.

Exit codes: 0 success, 2 invalid input, 3 unwritable output, 4 target not
achievable.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from pathlib import Path

from .core import ChbConfig
from .design import (
    DEFAULT_L_MAX,
    FilterDesign,
    buck_design,
    fleet_size,
    lc_for_cutoff,
    min_levels_for_thd,
    nls_cell_voltage,
    pspwm_dc_voltages,
)
from .errors import ChbError, NotAchievable
from .harmonics import thd_analytic, thd_numeric
from .modulation import nls_waveform, pspwm_carriers, pspwm_waveform

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_UNWRITABLE = 3
EXIT_NOT_ACHIEVABLE = 4

OUT_DIR_ENV = "CHBKIT_OUT_DIR"
THD_DECIMALS = 5


class OutputError(Exception):
    pass


def resolve_out(path: str | None) -> Path | None:
    if path is None:
        return None
    p = Path(path)
    base = os.environ.get(OUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def emit(text: str, path: str | None) -> None:
    target = resolve_out(path)
    if target is None:
        sys.stdout.write(text)
        return
    try:
        fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=f".{target.name}.", suffix=".tmp")
    except OSError as exc:
        raise OutputError(f"cannot write {target}: {exc}") from exc
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except OSError as exc:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise OutputError(f"cannot write {target}: {exc}") from exc


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def to_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _pct(x: float) -> str:
    return f"{100 * x:.{THD_DECIMALS}f}"


def cmd_thd_table(args) -> int:
    lo, hi = args.l_from, args.l_to
    for name, value in (("--from", lo), ("--to", hi)):
        if value < 3 or value % 2 == 0:
            raise ChbError(f"{name} must be an odd level count >= 3, got {value}")
    if lo > hi:
        raise ChbError(f"--from ({lo}) must not exceed --to ({hi})")
    rows = []
    for levels in range(lo, hi + 1, 2):
        analytic = thd_analytic(levels).thd
        cfg = ChbConfig(levels, 1.0)
        numeric = thd_numeric(nls_waveform(cfg, args.samples * cfg.f0)).thd
        rows.append((levels, analytic, numeric))
    if args.format == "csv":
        text = to_csv(["levels", "thd_analytic_pct", "thd_numeric_pct"],
                      [(L, _pct(a), _pct(n)) for L, a, n in rows])
    else:
        text = to_json({
            "samples_per_period": args.samples,
            "rows": [{"levels": L, "thd_analytic_pct": round(100 * a, THD_DECIMALS),
                      "thd_numeric_pct": round(100 * n, THD_DECIMALS)} for L, a, n in rows],
        })
    emit(text, args.out)
    return EXIT_OK


def cmd_waveform(args) -> int:
    if args.samples < 1:
        raise ChbError(f"--samples must be positive, got {args.samples}")
    rate = args.samples * args.f0
    if args.modulator == "nls":
        cfg = ChbConfig(args.levels, args.vpeak, args.f0)
        wave = nls_waveform(cfg, rate, args.periods)
        echo = {"modulator": "nls", "levels": cfg.levels, "v_peak": cfg.v_peak, "f0": cfg.f0}
    else:
        cfg = ChbConfig.from_cells(args.cells, args.cells * args.vdc, args.f0,
                                   m_a=args.ma if args.ma > 0 else 1.0)
        ps = pspwm_carriers(args.cells, args.fc, args.vdc)
        wave = pspwm_waveform(cfg, ps, rate, args.periods, m_a=args.ma)
        echo = {"modulator": "pspwm", "cells": ps.cells, "v_dc_level": ps.v_dc_level,
                "m_a": args.ma, "f_carrier": ps.f_carrier, "f0": cfg.f0,
                "theta_shift_deg": math.degrees(ps.theta_shift)}
    echo["sample_rate"] = rate
    echo["periods"] = wave.periods
    times = wave.times
    if args.format == "csv":
        comment = "# " + " ".join(f"{k}={v}" for k, v in echo.items()) + "\n"
        text = comment + to_csv(["time_s", "volts"],
                                ((f"{t:.9e}", f"{v:.6f}") for t, v in zip(times, wave.samples)))
    else:
        text = to_json({"config": echo,
                        "time_s": [float(f"{t:.9e}") for t in times],
                        "volts": [round(float(v), 6) for v in wave.samples]})
    emit(text, args.out)
    return EXIT_OK


def design_buck_report(args) -> dict:
    d = buck_design(args.vs, args.vo, args.fs, args.di, args.dv, r_load=args.rload)
    report = {
        "design": "buck",
        "inputs": {"v_s_V": d.v_s, "v_o_V": d.v_o, "f_s_Hz": d.f_s,
                   "ripple_i_A": d.ripple_i, "ripple_v_V": d.ripple_v},
        "outputs": {"duty": d.duty, "inductance_H": d.inductance,
                    "capacitance_F": d.capacitance},
        "equations": {"duty": "D = Vo / Vs",
                      "inductance_H": "L = D Vs (1 - D) / (fs dI)",
                      "capacitance_F": "C = dI / (8 fs dV)"},
    }
    if d.l_crit is not None:
        report["inputs"]["r_load_ohm"] = args.rload
        report["outputs"]["l_crit_H"] = d.l_crit
        report["equations"]["l_crit_H"] = "Lcrit = (1 - D) R / (2 fs)"
    return report


def design_filter_report(args) -> dict:
    if (args.cf is None) == (args.fc is None):
        raise ChbError("give exactly one of --cf or --fc")
    cf = args.cf if args.cf is not None else lc_for_cutoff(args.fc, args.lf)
    f = FilterDesign.from_lc(args.lf, cf)
    inputs = {"inductance_H": args.lf}
    inputs.update({"capacitance_F": args.cf} if args.cf is not None else {"cutoff_Hz": args.fc})
    return {
        "design": "filter",
        "inputs": inputs,
        "outputs": {"inductance_H": f.inductance, "capacitance_F": f.capacitance,
                    "cutoff_Hz": f.cutoff},
        "equations": {"cutoff_Hz": "fc = 1 / (2 pi sqrt(Lf Cf))",
                      "capacitance_F": "Cf = 1 / ((2 pi fc)^2 Lf)"},
    }


def design_system_report(args) -> dict:
    levels = min_levels_for_thd(args.thd, args.lmax)
    cells = (levels - 1) // 2
    report = {
        "design": "system",
        "inputs": {"v_ll_rms_V": args.vll, "p_target_W": args.p, "thd_limit": args.thd,
                   "p_unit_W": args.punit, "l_max": args.lmax},
        "outputs": {"levels": levels, "cells": cells,
                    "thd_ideal": thd_analytic(levels).thd,
                    "nls_cell_voltage_V": nls_cell_voltage(args.vll, cells),
                    "units": fleet_size(args.p, args.punit)},
        "equations": {"levels": "smallest odd L with THD(L) < limit",
                      "nls_cell_voltage_V": "Vdc = Vll sqrt(2/3) / N",
                      "units": "ceil(P_target / P_unit)"},
    }
    if args.ma is not None:
        total, level = pspwm_dc_voltages(args.vll, args.ma, args.pspwm_cells)
        report["inputs"].update({"m_a": args.ma, "pspwm_cells": args.pspwm_cells})
        report["outputs"].update({"pspwm_v_dc_total_V": total, "pspwm_v_dc_level_V": level})
        report["equations"].update({"pspwm_v_dc_total_V": "Vdc0 = sqrt(2/3) Vll / m_a",
                                    "pspwm_v_dc_level_V": "Vdc = Vdc0 / N"})
    return report


def cmd_design(args) -> int:
    builders = {"buck": design_buck_report, "filter": design_filter_report,
                "system": design_system_report}
    emit(to_json(builders[args.subcommand](args)), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="chbkit", description="Cascaded H-bridge inverter toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, fmt=True):
        if fmt:
            p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default=None, help="output file (default: stdout)")

    p = sub.add_parser("thd-table", help="ideal vs sampled THD for a range of level counts")
    p.add_argument("--from", dest="l_from", type=int, default=3)
    p.add_argument("--to", dest="l_to", type=int, default=27)
    p.add_argument("--samples", type=int, default=1 << 16, help="samples per period")
    common(p)
    p.set_defaults(func=cmd_thd_table)

    p = sub.add_parser("waveform", help="dump one synthesized phase waveform")
    p.add_argument("modulator", choices=("nls", "pspwm"))
    p.add_argument("--levels", type=int, default=27)
    p.add_argument("--vpeak", type=float, default=1.0)
    p.add_argument("--cells", type=int, default=6)
    p.add_argument("--vdc", type=float, default=1.0, help="PSPWM per-cell DC voltage")
    p.add_argument("--ma", type=float, default=0.8)
    p.add_argument("--fc", type=float, default=100e3, help="PSPWM carrier frequency (Hz)")
    p.add_argument("--f0", type=float, default=60.0)
    p.add_argument("--samples", type=int, default=1 << 16, help="samples per period")
    p.add_argument("--periods", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_waveform)

    p = sub.add_parser("design", help="component sizing reports (JSON)")
    dsub = p.add_subparsers(dest="subcommand", required=True)
    b = dsub.add_parser("buck")
    b.add_argument("--vs", type=float, required=True)
    b.add_argument("--vo", type=float, required=True)
    b.add_argument("--fs", type=float, required=True)
    b.add_argument("--di", type=float, required=True, help="inductor ripple current (A)")
    b.add_argument("--dv", type=float, required=True, help="capacitor ripple voltage (V)")
    b.add_argument("--rload", type=float, default=None)
    common(b, fmt=False)
    f = dsub.add_parser("filter")
    f.add_argument("--lf", type=float, required=True)
    f.add_argument("--cf", type=float, default=None)
    f.add_argument("--fc", type=float, default=None)
    common(f, fmt=False)
    s = dsub.add_parser("system")
    s.add_argument("--vll", type=float, required=True)
    s.add_argument("--p", type=float, required=True)
    s.add_argument("--thd", type=float, required=True, help="THD limit as a fraction")
    s.add_argument("--punit", type=float, required=True, help="measured power of one unit (W)")
    s.add_argument("--lmax", type=int, default=DEFAULT_L_MAX)
    s.add_argument("--ma", type=float, default=None, help="also size PSPWM cells at this m_a")
    s.add_argument("--pspwm-cells", type=int, default=6)
    common(s, fmt=False)
    p.set_defaults(func=cmd_design)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NotAchievable as exc:
        print(f"chbkit: not achievable: {exc}", file=sys.stderr)
        return EXIT_NOT_ACHIEVABLE
    except ChbError as exc:
        print(f"chbkit: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OutputError as exc:
        print(f"chbkit: {exc}", file=sys.stderr)
        return EXIT_UNWRITABLE


if __name__ == "__main__":
    sys.exit(main())
