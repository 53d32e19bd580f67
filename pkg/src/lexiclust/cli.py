"""Command-line front end: ``lexiclust {normalize,sim,matrix,cluster,sweep}``.

Exit codes: 0 on success, 1 on I/O or file-format problems, 2 on
validation failures (empty phrases, bad k range, bad parameters).
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import math
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .cluster import (
    DEFAULT_MAX_ITER,
    DEFAULT_PLATEAU_EPS,
    DEFAULT_THRESHOLD,
    ClusteringResult,
    SweepReport,
    cluster,
    sweep,
)
from .errors import EmptyPhraseError, LexiclustError
from .matrix import SimilarityMatrix, build_matrix, dumps_matrix, load_matrix
from .normalize import (
    NormalizationReport,
    NormalizedPhrase,
    default_lexicon_path,
    load_lexicon,
    normalize_corpus,
    normalize_phrase,
    read_phrases,
)
from .similarity import SimilarityParams, word_similarity
from .wordnet import WordNetDb, load_database

log = logging.getLogger("lexiclust")

ENV_WORDNET = "LEXICLUST_WORDNET"
DEFAULT_FACTORS = Path(__file__).parent / "data" / "factors_237.txt"

WORDNET_HELP = f"""\
WordNet 3.0 noun files not found. Pass --wordnet-dir or set {ENV_WORDNET}
to a directory holding index.noun, data.noun and noun.exc, for example the
'dict' folder of https://wordnetcode.princeton.edu/3.0/WordNet-3.0.tar.gz
(scripts/fetch_wordnet.py in the source tree does this for you)."""


class UsageError(Exception):
    """Bad command-line values; maps to exit code 2."""


@dataclass
class RunConfig:
    wordnet_dir: Path | None = None
    factors_path: Path = DEFAULT_FACTORS
    lexicon_path: Path | None = field(default_factory=default_lexicon_path)
    params: SimilarityParams = field(default_factory=SimilarityParams)
    threshold: float = DEFAULT_THRESHOLD
    max_iter: int = DEFAULT_MAX_ITER
    k: int = 11
    k_min: int = 5
    k_max: int = 12
    plateau_eps: float = DEFAULT_PLATEAU_EPS
    fmt: str = "md"
    jobs: int = 1
    matrix_in: Path | None = None
    matrix_out: Path | None = None
    output: Path | None = None

    def describe(self) -> list[str]:
        p = self.params
        return [
            f"wordnet_dir={self.wordnet_dir or ''}",
            f"factors={self.factors_path}",
            f"lexicon={self.lexicon_path or ''}",
            f"r={','.join(repr(x) for x in p.sense_weights)}",
            f"u={','.join(repr(x) for x in p.level_weights)}",
            f"mix={p.mix!r}",
            f"sense_cap={p.sense_cap}",
            f"depth_cap={p.depth_cap}",
            f"threshold={self.threshold!r}",
            f"max_iter={self.max_iter}",
            f"k={self.k}",
            f"k_min={self.k_min}",
            f"k_max={self.k_max}",
            f"plateau_eps={self.plateau_eps!r}",
            f"format={self.fmt}",
            f"jobs={self.jobs}",
        ]


def _floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _common_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("data")
    g.add_argument("--wordnet-dir", type=Path, help=f"WordNet dict directory (default: ${ENV_WORDNET})")
    g.add_argument("--factors", type=Path, default=DEFAULT_FACTORS, help="one phrase per line")
    g.add_argument("--lexicon", default=None, help="surface<TAB>noun TSV (default: shipped lexicon)")
    g.add_argument("--no-lexicon", action="store_true", help="disable substitutions entirely")
    g.add_argument("--matrix-in", type=Path, help="reuse a saved matrix instead of rebuilding")
    g.add_argument("--matrix-out", type=Path, help="where the matrix command writes its file")
    g.add_argument("-o", "--output", type=Path, help="report destination (default: stdout)")

    s = p.add_argument_group("similarity")
    s.add_argument("--r", type=_floats, default=(0.6, 0.3, 0.1), help="sense weights")
    s.add_argument("--u", type=_floats, default=(0.5, 0.25, 0.125, 0.0625, 0.03125), help="level-distance weights")
    s.add_argument("--mix", type=float, default=0.5, help="weight of the synonym part")
    s.add_argument("--sense-cap", type=int, default=None, help="senses per word (must equal len(r))")
    s.add_argument("--depth-cap", type=int, default=None, help="hypernym levels (must equal len(u))")

    c = p.add_argument_group("clustering")
    c.add_argument("--k", type=int, default=11)
    c.add_argument("--k-min", type=int, default=5)
    c.add_argument("--k-max", type=int, default=12)
    c.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    c.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    c.add_argument("--plateau-eps", type=float, default=DEFAULT_PLATEAU_EPS)

    o = p.add_argument_group("output")
    o.add_argument("--format", dest="fmt", choices=("md", "csv"), default="md")
    o.add_argument("--jobs", type=int, default=1, help="worker processes for matrix building")
    o.add_argument("--show-config", action="store_true", help="print the effective configuration and exit")
    o.add_argument("-v", "--verbose", action="store_true")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="lexiclust",
        description="Cluster short noun phrases by WordNet-based semantic similarity.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command")
    sub.add_parser("normalize", parents=[common], help="normalize the factor list to noun lemmas")
    sim = sub.add_parser("sim", parents=[common], help="score two phrases")
    sim.add_argument("phrase_a")
    sim.add_argument("phrase_b")
    sub.add_parser("matrix", parents=[common], help="build and save the similarity matrix")
    sub.add_parser("cluster", parents=[common], help="cluster into k categories")
    sub.add_parser("sweep", parents=[common], help="cluster for every k in a range")
    return parser


def config_from_args(args) -> RunConfig:
    try:
        params = SimilarityParams(args.r, args.u, args.mix)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.sense_cap is not None and args.sense_cap != params.sense_cap:
        raise UsageError(f"--sense-cap {args.sense_cap} does not match {params.sense_cap} sense weights")
    if args.depth_cap is not None and args.depth_cap != params.depth_cap:
        raise UsageError(f"--depth-cap {args.depth_cap} does not match {params.depth_cap} level weights")
    if args.max_iter < 1:
        raise UsageError("--max-iter must be >= 1")
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")

    wordnet_dir = args.wordnet_dir
    if wordnet_dir is None and os.environ.get(ENV_WORDNET):
        wordnet_dir = Path(os.environ[ENV_WORDNET])
    if args.no_lexicon:
        lexicon = None
    elif args.lexicon:
        lexicon = Path(args.lexicon)
    else:
        lexicon = default_lexicon_path()
    return RunConfig(
        wordnet_dir=wordnet_dir,
        factors_path=args.factors,
        lexicon_path=lexicon,
        params=params,
        threshold=args.threshold,
        max_iter=args.max_iter,
        k=args.k,
        k_min=args.k_min,
        k_max=args.k_max,
        plateau_eps=args.plateau_eps,
        fmt=args.fmt,
        jobs=args.jobs,
        matrix_in=args.matrix_in,
        matrix_out=args.matrix_out,
        output=args.output,
    )


# ---------------------------------------------------------------- helpers


def _open_db(config: RunConfig) -> WordNetDb:
    if config.wordnet_dir is None:
        raise LexiclustError(WORDNET_HELP)
    return load_database(config.wordnet_dir)


def _lexicon(config: RunConfig) -> dict[str, str]:
    return load_lexicon(config.lexicon_path) if config.lexicon_path else {}


def _emit(config: RunConfig, text: str) -> None:
    if config.output:
        Path(config.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _normalized(config: RunConfig, db: WordNetDb) -> tuple[list[NormalizedPhrase], NormalizationReport]:
    phrases, report = normalize_corpus(db, read_phrases(config.factors_path), _lexicon(config))
    if report.failures:
        for raw in report.failures:
            print(f"error: no noun content in phrase: {raw!r}", file=sys.stderr)
        raise EmptyPhraseError(report.failures[0], f"{len(report.failures)} phrase(s) have no noun content")
    return phrases, report


def _matrix(config: RunConfig) -> SimilarityMatrix:
    if config.matrix_in:
        return load_matrix(config.matrix_in)
    db = _open_db(config)
    phrases, _ = _normalized(config, db)
    return build_matrix(db, phrases, config.params, jobs=config.jobs)


def _f4(x: float) -> str:
    return f"{x:.4f}"


# ---------------------------------------------------------------- commands


def format_normalized(phrases: list[NormalizedPhrase], report: NormalizationReport) -> str:
    out = io.StringIO()
    for p in phrases:
        out.write(f"{p.raw}\t{' '.join(p.tokens)}\t{' '.join(p.dropped)}\n")
    out.write(
        f"# phrases={report.phrase_count} words={report.total_word_count} "
        f"nouns={report.noun_word_count} noun_fraction={_f4(report.noun_fraction)}\n"
    )
    return out.getvalue()


def cmd_normalize(config: RunConfig) -> int:
    db = _open_db(config)
    phrases, report = normalize_corpus(db, read_phrases(config.factors_path), _lexicon(config))
    _emit(config, format_normalized(phrases, report))
    if report.failures:
        for raw in report.failures:
            print(f"error: no noun content in phrase: {raw!r}", file=sys.stderr)
        return 2
    return 0


def phrase_breakdown(db: WordNetDb, a: NormalizedPhrase, b: NormalizedPhrase, params: SimilarityParams):
    """Mean synonym part, mean hypernym part and the phrase score for two phrases."""
    parts = [word_similarity(db, x, y, params) for x in a.tokens for y in b.tokens]
    pairs = len(parts)
    return (
        math.fsum(p.s_syn for p in parts) / pairs,
        math.fsum(p.s_hyp for p in parts) / pairs,
        math.fsum(p.s_total for p in parts) / pairs,
    )


def cmd_sim(config: RunConfig, phrase_a: str, phrase_b: str) -> int:
    db = _open_db(config)
    lexicon = _lexicon(config)
    a = normalize_phrase(db, phrase_a, lexicon)
    b = normalize_phrase(db, phrase_b, lexicon)
    s_syn, s_hyp, total = phrase_breakdown(db, a, b, config.params)
    _emit(
        config,
        f"A: {a.raw} -> {a.text}\n"
        f"B: {b.raw} -> {b.text}\n"
        f"s_syn   {s_syn:.6f}\n"
        f"s_hyp   {s_hyp:.6f}\n"
        f"PhraseS {total:.6f}\n",
    )
    return 0


def cmd_matrix(config: RunConfig) -> int:
    start = time.perf_counter()
    matrix = _matrix(config)
    text = dumps_matrix(matrix)
    if config.matrix_out:
        Path(config.matrix_out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    elapsed = time.perf_counter() - start
    print(f"n={len(matrix)} elapsed={elapsed:.2f}s", file=sys.stderr)
    return 0


def format_clusters(matrix: SimilarityMatrix, result: ClusteringResult, fmt: str = "md") -> str:
    labels = matrix.labels
    if fmt == "csv":
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["cluster", "category", "size", "s_c", "member"])
        for ci, c in enumerate(result.clusters, 1):
            for m in c.members:
                w.writerow([ci, labels[c.medoid], c.size, _f4(c.quality), labels[m]])
        return out.getvalue()

    total = sum(c.size for c in result.clusters)
    lines = [
        f"# Categories (k={result.k})",
        "",
        f"iterations: {result.iterations_run}, converged: {'yes' if result.converged else 'no'}",
        "",
        "| No. | Category | Factors | S_c |",
        "|---:|---|---:|---:|",
    ]
    for ci, c in enumerate(result.clusters, 1):
        lines.append(f"| {ci} | {labels[c.medoid]} | {c.size} | {_f4(c.quality)} |")
    lines.append(f"| | Total | {total} | |")
    for ci, c in enumerate(result.clusters, 1):
        lines += ["", f"## {ci}. {labels[c.medoid]} ({c.size})", ""]
        lines += [f"- {labels[m]}" for m in c.members]
    return "\n".join(lines) + "\n"


def cmd_cluster(config: RunConfig) -> int:
    matrix = _matrix(config)
    result = cluster(matrix, config.k, config.max_iter, config.threshold)
    _emit(config, format_clusters(matrix, result, config.fmt))
    return 0


def format_sweep(report: SweepReport, fmt: str = "md") -> str:
    header = ["k", "S_kmax", "S_kmin", "S_kavg", "converged", "suggested"]
    rows = [
        [
            str(r.k),
            _f4(r.s_max),
            _f4(r.s_min),
            _f4(r.s_avg),
            "yes" if r.converged else "no",
            "*" if r.k == report.suggested_k else "",
        ]
        for r in report.rows
    ]
    if fmt == "csv":
        out = io.StringIO()
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        return out.getvalue()
    lines = ["| " + " | ".join(header) + " |", "|" + "---:|" * 4 + "---|---|"]
    lines += ["| " + " | ".join(r) + " |" for r in rows]
    return "\n".join(lines) + "\n"


def cmd_sweep(config: RunConfig) -> int:
    if not 1 <= config.k_min <= config.k_max:
        raise UsageError(f"bad k range {config.k_min}..{config.k_max}")
    matrix = _matrix(config)
    report = sweep(matrix, config.k_min, config.k_max, config.max_iter, config.threshold, config.plateau_eps)
    _emit(config, format_sweep(report, config.fmt))
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        config = config_from_args(args)
        if args.show_config:
            print("\n".join(config.describe()))
            return 0
        if args.command is None:
            parser.print_help(sys.stderr)
            return 2
        if args.command == "normalize":
            return cmd_normalize(config)
        if args.command == "sim":
            return cmd_sim(config, args.phrase_a, args.phrase_b)
        if args.command == "matrix":
            return cmd_matrix(config)
        if args.command == "cluster":
            return cmd_cluster(config)
        return cmd_sweep(config)
    except (UsageError, EmptyPhraseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (LexiclustError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
