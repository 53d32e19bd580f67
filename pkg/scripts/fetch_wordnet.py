#!/usr/bin/env python3
"""Download the WordNet 3.0 noun files into a local cache directory.

Tries the Princeton release tarball first. When that is unreachable it
falls back to the ``wn==0.0.23`` source distribution on PyPI, which
bundles the same 3.0 database files.
"""

import argparse
import io
import shutil
import subprocess
import sys
import tarfile
import tempfile
import urllib.request
from pathlib import Path

PRINCETON_URL = "https://wordnetcode.princeton.edu/3.0/WordNet-3.0.tar.gz"
PYPI_SDIST = "wn==0.0.23"
WANTED = ("index.noun", "data.noun", "noun.exc", "LICENSE")
DEFAULT_DEST = Path.home() / ".cache" / "lexiclust" / "wordnet-3.0"


def _extract(archive: tarfile.TarFile, dest: Path) -> list[str]:
    found = []
    for member in archive.getmembers():
        name = Path(member.name).name
        parent = Path(member.name).parent.name
        if name in WANTED and parent in ("dict", "wordnet-3.0", "WordNet-3.0") and member.isfile():
            with archive.extractfile(member) as src, open(dest / name, "wb") as out:
                shutil.copyfileobj(src, out)
            found.append(name)
    return found


def from_princeton(dest: Path, timeout: float) -> list[str]:
    with urllib.request.urlopen(PRINCETON_URL, timeout=timeout) as resp:
        data = resp.read()
    with tarfile.open(fileobj=io.BytesIO(data), mode="r:gz") as tar:
        return _extract(tar, dest)


def from_pypi(dest: Path) -> list[str]:
    with tempfile.TemporaryDirectory() as tmp:
        subprocess.run(
            [sys.executable, "-m", "pip", "download", PYPI_SDIST, "--no-deps",
             "--no-binary", ":all:", "--timeout", "120", "-d", tmp],
            check=True,
            stdout=subprocess.DEVNULL,
        )
        sdist = next(Path(tmp).glob("wn-*.tar.gz"))
        with tarfile.open(sdist, mode="r:gz") as tar:
            return _extract(tar, dest)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--dest", type=Path, default=DEFAULT_DEST)
    parser.add_argument("--timeout", type=float, default=30.0)
    parser.add_argument("--skip-princeton", action="store_true", help="go straight to the PyPI fallback")
    args = parser.parse_args(argv)

    args.dest.mkdir(parents=True, exist_ok=True)
    found: list[str] = []
    if not args.skip_princeton:
        try:
            found = from_princeton(args.dest, args.timeout)
        except OSError as exc:
            print(f"princeton download failed ({exc}); trying PyPI", file=sys.stderr)
    if not {"index.noun", "data.noun", "noun.exc"} <= set(found):
        found = from_pypi(args.dest)
    missing = {"index.noun", "data.noun", "noun.exc"} - set(found)
    if missing:
        print(f"could not find {sorted(missing)} in the downloaded archive", file=sys.stderr)
        return 1
    print(f"WordNet noun files written to {args.dest}")
    print(f"export LEXICLUST_WORDNET={args.dest}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
