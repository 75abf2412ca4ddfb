"""Script entry points: plot-tradeoff CSV MANIFEST OUT, plot-beampattern ..."""

from __future__ import annotations

import argparse
import sys

from .figures import plot_beampattern, plot_tradeoff
from .io import SchemaError


def _run(builder, description, argv) -> int:
    parser = argparse.ArgumentParser(description=description)
    parser.add_argument("csv")
    parser.add_argument("manifest")
    parser.add_argument("out")
    args = parser.parse_args(argv)
    try:
        written = builder(args.csv, args.manifest, args.out)
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for path in written:
        print(f"wrote {path}")
    return 0


def tradeoff_main(argv=None) -> int:
    return _run(plot_tradeoff, "Plot tradeoff curves from a sweep CSV", argv)


def beampattern_main(argv=None) -> int:
    return _run(plot_beampattern, "Plot a transmit pattern CSV", argv)


if __name__ == "__main__":
    sys.exit(tradeoff_main())
