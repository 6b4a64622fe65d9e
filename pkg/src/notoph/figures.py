"""Render massless-limit scans to CSV and matplotlib figures.

Kept separate from the verification CLI on purpose: the check reports
carry the numeric trajectories, and this tool consumes the same scan data
to produce files for human eyes.  Entry point: ``notoph-report``.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path

from .polarization import (
    Helicity,
    Normalization,
    default_mass_sequence,
    massless_limit_scan,
)


def _scan_set(spatial, points: int, m_max: float, m_min: float):
    sequence = default_mass_sequence(m_max=m_max, m_min=m_min, points=points)
    scans = []
    for norm in (Normalization.mass(), Normalization.unit()):
        for h in Helicity:
            scans.append(massless_limit_scan(spatial, h, norm, sequence, quantity="u"))
        scans.append(massless_limit_scan(spatial, None, norm, sequence, quantity="ast"))
    return scans


def write_csv(scans, path: Path) -> None:
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            ["quantity", "normalization", "helicity", "component", "mass", "magnitude"]
        )
        for scan in scans:
            h = scan.helicity.value if scan.helicity else "-"
            for comp in scan.components:
                for m, magnitude in comp.magnitudes:
                    writer.writerow(
                        [scan.quantity, scan.normalization.label(), h, comp.label,
                         repr(m), repr(magnitude)]
                    )


def write_summary(scans, path: Path) -> None:
    payload = []
    for scan in scans:
        payload.append(
            {
                "quantity": scan.quantity,
                "normalization": scan.normalization.label(),
                "helicity": scan.helicity.value if scan.helicity else None,
                "components": [
                    {
                        "label": comp.label,
                        "classification": comp.classification,
                        "slope": comp.slope,
                        "divergence_order": comp.divergence_order,
                        "limit_magnitude": comp.limit_magnitude,
                        "exact_massless": comp.exact_massless,
                    }
                    for comp in scan.components
                ],
            }
        )
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def render_figures(scans, outdir: Path) -> list[Path]:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    written = []
    by_norm: dict[str, list] = {}
    for scan in scans:
        by_norm.setdefault(scan.normalization.label(), []).append(scan)
    for norm_label, group in sorted(by_norm.items()):
        fig, axes = plt.subplots(1, len(group), figsize=(3.2 * len(group), 3.4), sharey=True)
        if len(group) == 1:
            axes = [axes]
        for ax, scan in zip(axes, group):
            title = scan.quantity if scan.helicity is None else f"{scan.quantity}, h={scan.helicity.value}"
            for comp in scan.components:
                ms = [m for m, v in comp.magnitudes]
                vs = [v for m, v in comp.magnitudes]
                if max(vs) <= 0:
                    continue
                style = "--" if comp.classification == "divergent" else "-"
                ax.loglog(ms, vs, style, label=comp.label)
            ax.set_title(title, fontsize=9)
            ax.set_xlabel("m")
            ax.legend(fontsize=6)
        axes[0].set_ylabel("|component|")
        fig.suptitle(f"massless-limit scan, {norm_label}")
        fig.tight_layout()
        safe = norm_label.replace("=", "_")
        target = outdir / f"massless_scan_{safe}.png"
        fig.savefig(target, dpi=150)
        plt.close(fig)
        written.append(target)
    return written


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="notoph-report",
        description="Write massless-limit scan trajectories as CSV plus "
        "log-log figures for both normalizations.",
    )
    parser.add_argument("--spatial", default="0,0,3", metavar="P1,P2,P3",
                        help="spatial momentum of the sweep (default along OZ)")
    parser.add_argument("--points", type=int, default=13)
    parser.add_argument("--m-max", type=float, default=1e-3)
    parser.add_argument("--m-min", type=float, default=1e-6)
    parser.add_argument("--out-dir", default="reports", metavar="DIR")
    args = parser.parse_args(argv)
    try:
        spatial = tuple(Fraction(part.strip()) for part in args.spatial.split(","))
        if len(spatial) != 3:
            raise ValueError("need three components")
    except (ValueError, ZeroDivisionError) as exc:
        sys.stderr.write(f"error: bad --spatial value ({exc})\n")
        return 2
    outdir = Path(args.out_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    try:
        scans = _scan_set(spatial, args.points, args.m_max, args.m_min)
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    csv_path = outdir / "massless_scan.csv"
    write_csv(scans, csv_path)
    summary_path = outdir / "massless_scan.json"
    write_summary(scans, summary_path)
    figures = render_figures(scans, outdir)
    for path in [csv_path, summary_path, *figures]:
        sys.stdout.write(f"wrote {path}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
