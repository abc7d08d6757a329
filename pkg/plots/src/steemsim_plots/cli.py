"""Entry points: plot-timeseries <csv> <outdir>, plot-sweep <csv> <outdir>."""

from __future__ import annotations

import argparse
import sys

from .figures import plot_timeseries, plot_sweep


def _main(render, description: str, argv: list[str] | None) -> int:
    parser = argparse.ArgumentParser(description=description)
    parser.add_argument("csv", help="input CSV emitted by steemsim")
    parser.add_argument("outdir", help="directory for the rendered images")
    args = parser.parse_args(argv)
    try:
        for path in render(args.csv, args.outdir):
            print(path)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def timeseries_main(argv: list[str] | None = None) -> int:
    return _main(plot_timeseries, "Render quality-evolution figures", argv)


def sweep_main(argv: list[str] | None = None) -> int:
    return _main(plot_sweep, "Render ring-size sweep figures", argv)


if __name__ == "__main__":
    sys.exit(timeseries_main())
