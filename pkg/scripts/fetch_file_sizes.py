#!/usr/bin/env python3
"""Fetch the computer file-size application dataset, or generate a stand-in.

The application models the sizes in bytes of the 269 ``*.ini`` files of a
Windows machine.  The dataset is hosted on the author's data page

    http://web.uvic.ca/~dgiles/downloads/data

(not bundled here: license and long-term availability are unknown).  Point
``--url`` at the actual file once you have located it on that page; the
script validates the download and writes ``data/ini_sizes.txt`` in the
format the CLI reads (one value per line).  The acceptance suite picks the
file up from there, or from ``$LOMAXBAYES_INI_DATA``.

Without a reachable URL, ``--synthetic`` writes ``data/ini_sizes_synthetic.txt``
with 269 draws from a Lomax distribution whose parameters resemble the
published fit.  It exercises the same pipeline but is NOT the real data;
the file name and header say so, and the acceptance comparison will not
use it.
"""

import argparse
import sys
import urllib.request
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
SOURCE_PAGE = "http://web.uvic.ca/~dgiles/downloads/data"
EXPECTED_N = 269


def fetch(url: str, dest: Path) -> int:
    sys.path.insert(0, str(ROOT / "src"))
    from lomaxbayes.cli import parse_dataset

    print(f"downloading {url} ...")
    with urllib.request.urlopen(url, timeout=30) as resp:
        raw = resp.read().decode("utf-8", errors="replace")
    tmp = dest.with_suffix(".part")
    tmp.write_text(raw, encoding="utf-8")
    d = parse_dataset(tmp)
    tmp.rename(dest)
    print(f"wrote {dest} ({d.n} observations)")
    if d.n != EXPECTED_N:
        print(f"warning: expected {EXPECTED_N} observations, got {d.n}; "
              "check that the URL points at the .ini file-size dataset")
    return 0


def synthetic(dest: Path, seed: int) -> int:
    import numpy as np

    sys.path.insert(0, str(ROOT / "src"))
    from lomaxbayes import LomaxParams, sample

    d = sample(LomaxParams(beta=130.5, alpha=0.5), np.random.default_rng(seed), EXPECTED_N)
    lines = [
        "# SYNTHETIC stand-in for the .ini file-size dataset (not the real data)",
        f"# {EXPECTED_N} draws from Lomax(beta=130.5, alpha=0.5), seed={seed}",
    ] + [repr(v) for v in d.x.tolist()]
    dest.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {dest} ({EXPECTED_N} synthetic observations)")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--url", help=f"direct URL of the data file (see {SOURCE_PAGE})")
    parser.add_argument("--synthetic", action="store_true",
                        help="generate a clearly-marked synthetic stand-in instead")
    parser.add_argument("--seed", type=int, default=0, help="seed for --synthetic")
    parser.add_argument("--outdir", default=str(ROOT / "data"), help="output directory")
    args = parser.parse_args(argv)

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    if args.synthetic:
        return synthetic(outdir / "ini_sizes_synthetic.txt", args.seed)
    if not args.url:
        print(f"no --url given; browse {SOURCE_PAGE} for the .ini file-size dataset\n"
              "then rerun with --url <direct file link>, or use --synthetic")
        return 1
    try:
        return fetch(args.url, outdir / "ini_sizes.txt")
    except OSError as exc:
        print(f"download failed: {exc}\n"
              "use --synthetic to generate a stand-in dataset instead")
        return 1


if __name__ == "__main__":
    sys.exit(main())
