"""Command-line pipeline: build-tables, align, annotate, score-sentence,
evaluate, stats.

Every subcommand takes ``--config`` (a ``key = value`` file, see README) and
an explicit ``--out``. A run manifest with config snapshot, input digests,
timings, and warnings is written next to each output. Exit codes: 0 success,
1 runtime failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import time
from dataclasses import dataclass, field, replace
from pathlib import Path

from . import alignment as al
from . import corpus as cp
from . import scoring as sc
from .distance import IndelConfig
from .errors import ParseError, PipelineError, ValidationError
from .etymology import EtymologyModel
from .g2p import collect_g2p_counts, collect_raw_counts

_BOOL = {"true": True, "1": True, "yes": True, "false": False, "0": False, "no": False}


@dataclass(frozen=True)
class PipelineConfig:
    ags: sc.AgsConfig = field(default_factory=sc.AgsConfig)
    aligner: al.AlignerParams = field(default_factory=al.AlignerParams)
    indel: IndelConfig = field(default_factory=IndelConfig)
    alpha: float = 0.1
    sentence_agg: str = "harmonic-k"
    aligner_mode: str = "builtin"
    dialects: tuple[str, ...] | None = None  # optional whitelist
    workers: int = 1

    def echo(self) -> dict:
        return {
            "t": self.ags.t,
            "s": self.ags.s,
            "k": self.ags.k,
            "alpha": self.alpha,
            "indel_cost": self.indel.indel_cost,
            "missing_dialect_delta": self.ags.missing_dialect_delta,
            "include_self_dialect": self.ags.include_self_dialect,
            "sentence_agg": self.sentence_agg,
            "aligner": {
                "lambda": self.aligner.lam,
                "theta": self.aligner.theta,
                "mode": self.aligner_mode,
            },
        }


def parse_config_file(path: str | Path) -> dict[str, str]:
    raw: dict[str, str] = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ParseError(f"config line {lineno}: expected 'key = value'")
        raw[key.strip()] = value.strip()
    return raw


def build_config(raw: dict[str, str]) -> PipelineConfig:
    known = {
        "t", "s", "k", "alpha", "indel_cost", "missing_dialect_delta",
        "include_self_dialect", "exclude_missing_dialects", "epsilon",
        "sentence_agg", "aligner.lambda", "aligner.theta", "aligner.mode",
        "dialects", "workers",
    }
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ValidationError(f"unknown config key(s): {', '.join(unknown)}")

    def _f(key: str, default: float) -> float:
        return float(raw[key]) if key in raw else default

    def _b(key: str, default: bool) -> bool:
        if key not in raw:
            return default
        try:
            return _BOOL[raw[key].lower()]
        except KeyError:
            raise ValidationError(f"config key {key}: expected a boolean") from None

    ags = sc.AgsConfig(
        t=_f("t", 0.5),
        s=_f("s", 20.0),
        k=int(raw.get("k", 2)),
        missing_dialect_delta=_f("missing_dialect_delta", 1.0),
        include_self_dialect=_b("include_self_dialect", False),
        epsilon=_f("epsilon", 1e-4),
        exclude_missing_dialects=_b("exclude_missing_dialects", False),
    )
    aligner = al.AlignerParams(
        lam=_f("aligner.lambda", 0.7),
        theta=_f("aligner.theta", 0.5),
    )
    mode = raw.get("aligner.mode", "builtin")
    if mode not in ("builtin", "import"):
        raise ValidationError("aligner.mode must be 'builtin' or 'import'")
    agg_mode = raw.get("sentence_agg", "harmonic-k")
    if agg_mode not in ("harmonic-k", "mean"):
        raise ValidationError("sentence_agg must be 'harmonic-k' or 'mean'")
    dialects = None
    if "dialects" in raw:
        dialects = tuple(d.strip() for d in raw["dialects"].split(",") if d.strip())
    return PipelineConfig(
        ags=ags,
        aligner=aligner,
        indel=IndelConfig(indel_cost=_f("indel_cost", 1.0)),
        alpha=_f("alpha", 0.1),
        sentence_agg=agg_mode,
        aligner_mode=mode,
        dialects=dialects,
        workers=int(raw.get("workers", 1)),
    )


def load_pipeline_config(path: str | None) -> PipelineConfig:
    if path is None:
        return PipelineConfig()
    return build_config(parse_config_file(path))


def _sha256(path: str | Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


class Manifest:
    """Run record: config, input digests, stage timings, outputs, warnings."""

    def __init__(self, command: str, config: PipelineConfig):
        self.data: dict = {
            "command": command,
            "config": config.echo(),
            "inputs": {},
            "outputs": [],
            "timings": {},
            "warnings": {},
        }
        self._stage_started: float | None = None
        self._stage_name: str | None = None

    def add_input(self, path: str | Path) -> None:
        self.data["inputs"][str(path)] = _sha256(path)

    def add_output(self, path: str | Path) -> None:
        self.data["outputs"].append(str(path))

    def warn(self, key: str, value) -> None:
        self.data["warnings"][key] = value

    def stage(self, name: str):
        manifest = self

        class _Timer:
            def __enter__(self):
                self.start = time.perf_counter()
                return self

            def __exit__(self, *exc):
                manifest.data["timings"][name] = round(time.perf_counter() - self.start, 6)
                return False

        return _Timer()

    def write(self, out: str | Path) -> Path:
        out = Path(out)
        path = out / "run_manifest.json" if out.is_dir() else out.with_name(out.name + ".manifest.json")
        path.write_text(
            json.dumps(self.data, ensure_ascii=False, indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
        return path


def _json_line(record: dict) -> str:
    return json.dumps(record, ensure_ascii=False, sort_keys=True, separators=(",", ":"))


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------


def cmd_build_tables(args: argparse.Namespace) -> int:
    config = load_pipeline_config(args.config)
    alpha = args.alpha if args.alpha is not None else config.alpha
    manifest = Manifest("build-tables", replace(config, alpha=alpha))
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    with manifest.stage("load"):
        inventory = cp.load_caphi_table(args.caphi)
        lexicon = cp.load_lexicon(args.lexicon, inventory)
        manifest.add_input(args.caphi)
        manifest.add_input(args.lexicon)
        raw_pairs = None
        if args.raw_pairs:
            raw_pairs = cp.load_raw_pairs(args.raw_pairs, inventory)
            manifest.add_input(args.raw_pairs)

    with manifest.stage("estimate"):
        model = EtymologyModel.build(lexicon, inventory, raw_pairs, alpha=alpha)

    with manifest.stage("write"):
        model.save(out)
        collect_g2p_counts(lexicon, inventory).to_tsv(out / "g2p_counts.tsv")
        if raw_pairs:
            collect_raw_counts(raw_pairs, inventory).to_tsv(out / "raw_counts.tsv")
        for name in ("manifest.json", "ph_given_et.tsv", "ph_given_or.tsv",
                     "et_given_ph.tsv", "etym_spelling.tsv", "etym_counts.tsv"):
            if (out / name).exists():
                manifest.add_output(out / name)
    manifest.write(out)

    print(f"dialects: {', '.join(model.dialects)}")
    print(f"coda alphabet: {len(model.coda_alphabet)} symbols")
    print(f"orthographic alphabet: {len(model.or_alphabet)} symbols")
    for name in ("ph_given_et", "ph_given_or", "et_given_ph", "etym_spelling"):
        table = getattr(model, name)
        print(
            f"{name}: {len(table.dialect_entries)} dialect entries, "
            f"{len(table.pooled_entries)} pooled entries"
        )
    return 0


def _anchored_buckets(corpus: cp.ParallelCorpus, anchor: str):
    kept = [b for b in corpus.buckets if b.has_anchor(anchor)]
    return kept, len(corpus.buckets) - len(kept)


def _import_alignment_sets(
    buckets: list[cp.ParallelBucket],
    directory: Path,
    dialects: tuple[str, ...],
    anchor: str,
) -> list[al.AlignmentSet]:
    lines: dict[str, list[str]] = {}
    for dialect in dialects:
        if dialect == anchor:
            continue
        path = directory / f"{dialect}.align"
        if not path.exists():
            continue
        lines[dialect] = path.read_text(encoding="utf-8").splitlines()
    sets = []
    for i, bucket in enumerate(buckets):
        files = {}
        for dialect, dialect_lines in lines.items():
            if dialect not in bucket.sentences:
                continue
            if i >= len(dialect_lines):
                raise ValidationError(
                    f"{dialect}.align has {len(dialect_lines)} lines but bucket "
                    f"{i + 1} ({bucket.sentence_id}) needs one"
                )
            files[dialect] = dialect_lines[i]
        sets.append(al.import_alignments(bucket, files, anchor))
    return sets


_WORKER_STATE: dict = {}


def _init_align_worker(model, params, costs) -> None:
    _WORKER_STATE["model"] = model
    _WORKER_STATE["params"] = params
    _WORKER_STATE["costs"] = costs
    _WORKER_STATE["memo"] = {}


def _align_one(bucket: cp.ParallelBucket) -> al.AlignmentSet:
    return al.builtin_align(
        bucket,
        _WORKER_STATE["model"],
        _WORKER_STATE["params"],
        _WORKER_STATE["costs"],
        _WORKER_STATE["memo"],
    )


def _builtin_alignment_sets(
    buckets: list[cp.ParallelBucket],
    model: EtymologyModel,
    config: PipelineConfig,
    memo: dict | None = None,
) -> list[al.AlignmentSet]:
    if config.workers <= 1:
        return [
            al.builtin_align(b, model, config.aligner, config.indel, memo)
            for b in buckets
        ]
    import multiprocessing

    ctx = multiprocessing.get_context("fork")
    chunk = max(1, len(buckets) // (config.workers * 4))
    with ctx.Pool(
        config.workers,
        initializer=_init_align_worker,
        initargs=(model, config.aligner, config.indel),
    ) as pool:
        return pool.map(_align_one, buckets, chunksize=chunk)


def cmd_align(args: argparse.Namespace) -> int:
    config = load_pipeline_config(args.config)
    manifest = Manifest("align", config)
    corpus = cp.load_parallel_corpus(
        args.corpus, set(config.dialects) if config.dialects else None
    )
    manifest.add_input(args.corpus)
    model = EtymologyModel.load(args.model)
    anchor = config.aligner.anchor
    buckets, skipped = _anchored_buckets(corpus, anchor)
    if skipped:
        manifest.warn("buckets_missing_anchor", skipped)

    with manifest.stage("align"):
        sets = _builtin_alignment_sets(buckets, model, config)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    with manifest.stage("write"):
        for dialect in corpus.dialects:
            if dialect == anchor:
                continue
            path = out / f"{dialect}.align"
            with open(path, "w", encoding="utf-8") as fh:
                for aset in sets:
                    links = []
                    for i, group in enumerate(aset.groups):
                        member = group.get(dialect)
                        if member is not None:
                            links.append(f"{i}-{member.token_index}")
                    fh.write(" ".join(links) + "\n")
            manifest.add_output(path)
    manifest.write(out)
    print(f"aligned {len(buckets)} buckets across {len(corpus.dialects) - 1} dialect pairs")
    return 0


def _score_words(
    corpus: cp.ParallelCorpus,
    agg: al.AlignmentAggregate,
    model: EtymologyModel,
    config: PipelineConfig,
    memo: dict | None = None,
) -> dict[tuple[str, str], sc.WordAgs]:
    scores: dict[tuple[str, str], sc.WordAgs] = {}
    others_template = agg.dialects
    for bucket in corpus.buckets:
        for dialect in sorted(bucket.sentences):
            for token in bucket.sentences[dialect].tokens:
                key = (token.surface, dialect)
                if key in scores:
                    continue
                if key in agg:
                    scores[key] = sc.word_ags(
                        token.surface, dialect, agg, model, config.ags, config.indel, memo
                    )
                else:
                    # no alignment evidence anywhere: every dialect counts as missing
                    deltas = {
                        e: config.ags.missing_dialect_delta
                        for e in others_template
                        if e != dialect
                    }
                    scores[key] = sc.WordAgs(
                        word=token.surface,
                        dialect=dialect,
                        deltas=deltas,
                        ags=sc.ags_from_deltas(dict(deltas), config.ags),
                    )
    return scores


def cmd_annotate(args: argparse.Namespace) -> int:
    config = load_pipeline_config(args.config)
    if args.sentence_agg:
        config = replace(config, sentence_agg=args.sentence_agg)
    if args.workers:
        config = replace(config, workers=args.workers)
    manifest = Manifest("annotate", config)

    with manifest.stage("load"):
        corpus = cp.load_parallel_corpus(
            args.corpus, set(config.dialects) if config.dialects else None
        )
        manifest.add_input(args.corpus)
        manifest.add_input(Path(args.model) / "manifest.json")
        model = EtymologyModel.load(args.model)

    anchor = config.aligner.anchor
    buckets, skipped = _anchored_buckets(corpus, anchor)
    if skipped:
        manifest.warn("buckets_missing_anchor", skipped)

    mode = "import" if args.alignments else config.aligner_mode
    if mode == "import" and not args.alignments:
        raise ValidationError("aligner.mode=import needs --alignments DIR")
    memo: dict = {}
    with manifest.stage("align"):
        if mode == "import":
            sets = _import_alignment_sets(
                buckets, Path(args.alignments), corpus.dialects, anchor
            )
        else:
            sets = _builtin_alignment_sets(buckets, model, config, memo)

    with manifest.stage("aggregate"):
        agg = al.aggregate(sets)

    with manifest.stage("score"):
        word_scores = _score_words(corpus, agg, model, config, memo)

    out = Path(args.out)
    with manifest.stage("write"):
        echo = config.echo()
        with open(out, "w", encoding="utf-8") as fh:
            for bucket in corpus.buckets:
                for dialect in sorted(bucket.sentences):
                    sentence = bucket.sentences[dialect]
                    token_ags = [
                        word_scores[(t.surface, dialect)].ags for t in sentence.tokens
                    ]
                    record = {
                        "sentence_id": sentence.sentence_id,
                        "dialect": dialect,
                        "text": sentence.raw_text,
                        "tokens": [t.surface for t in sentence.tokens],
                        "token_ags": token_ags,
                        "sentence_ags": (
                            sc.aggregate_sentence(token_ags, config.sentence_agg, config.ags)
                            if token_ags
                            else None
                        ),
                        "config": echo,
                    }
                    if args.emit_deltas:
                        record["token_deltas"] = [
                            word_scores[(t.surface, dialect)].deltas
                            for t in sentence.tokens
                        ]
                    fh.write(_json_line(record) + "\n")
        manifest.add_output(out)
        if args.dump_alignments:
            agg.to_tsv(args.dump_alignments)
            manifest.add_output(args.dump_alignments)
        if args.word_table:
            with open(args.word_table, "w", encoding="utf-8") as fh:
                for (word, dialect) in sorted(word_scores):
                    fh.write(f"{word}\t{dialect}\t{word_scores[(word, dialect)].ags!r}\n")
            manifest.add_output(args.word_table)
    manifest.write(out)
    print(f"annotated {sum(len(b.sentences) for b in corpus.buckets)} sentences")
    return 0


def _load_word_table(path: str | Path) -> dict[str, float]:
    sums: dict[str, list[float]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line:
                continue
            cols = line.split("\t")
            if len(cols) != 3:
                raise ParseError(f"word table line {lineno}: expected 3 columns")
            sums.setdefault(cols[0], []).append(float(cols[2]))
    return {word: sum(vs) / len(vs) for word, vs in sums.items()}


def _read_id_value_tsv(path: str | Path, what: str) -> dict[str, float]:
    values: dict[str, float] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line:
                continue
            cols = line.split("\t")
            if len(cols) != 2:
                raise ParseError(f"{what} line {lineno}: expected 2 columns")
            if cols[0] in values:
                raise ValidationError(f"{what} line {lineno}: duplicate id {cols[0]!r}")
            values[cols[0]] = float(cols[1])
    return values


def cmd_score_sentence(args: argparse.Namespace) -> int:
    config = load_pipeline_config(args.config)
    if args.sentence_agg:
        config = replace(config, sentence_agg=args.sentence_agg)
    manifest = Manifest("score-sentence", config)
    results: list[tuple[str, float]] = []

    if args.predictions:
        manifest.add_input(args.predictions)
        by_sentence: dict[str, list[tuple[int, float]]] = {}
        order: list[str] = []
        with open(args.predictions, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.rstrip("\n")
                if not line:
                    continue
                cols = line.split("\t")
                if len(cols) != 3:
                    raise ParseError(f"predictions line {lineno}: expected 3 columns")
                sid, idx, value = cols
                if sid not in by_sentence:
                    by_sentence[sid] = []
                    order.append(sid)
                if any(i == int(idx) for i, _ in by_sentence[sid]):
                    raise ValidationError(
                        f"predictions line {lineno}: duplicate token {idx} "
                        f"for sentence {sid!r}"
                    )
                by_sentence[sid].append((int(idx), float(value)))
        for sid in order:
            scores = [v for _, v in sorted(by_sentence[sid])]
            results.append((sid, sc.aggregate_sentence(scores, config.sentence_agg, config.ags)))
    elif args.annotated:
        manifest.add_input(args.annotated)
        records = []
        with open(args.annotated, encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    records.append(json.loads(line))
        ids = [r["sentence_id"] for r in records]
        multi = len(set(ids)) != len(ids)
        for record in records:
            scores = record["token_ags"]
            if not scores:
                continue
            sid = (
                f"{record['sentence_id']}|{record['dialect']}"
                if multi
                else record["sentence_id"]
            )
            results.append(
                (sid, sc.aggregate_sentence(scores, config.sentence_agg, config.ags))
            )
    else:
        if not args.word_table:
            raise ValidationError("corpus mode needs --word-table")
        manifest.add_input(args.corpus)
        manifest.add_input(args.word_table)
        table = _load_word_table(args.word_table)
        corpus = cp.load_parallel_corpus(args.corpus)
        multi_dialect = any(len(b.sentences) > 1 for b in corpus.buckets)
        for bucket in corpus.buckets:
            for dialect in sorted(bucket.sentences):
                sentence = bucket.sentences[dialect]
                if not sentence.tokens:
                    continue
                scores = [
                    sc.lookup_baseline(t.surface, table, args.default)
                    for t in sentence.tokens
                ]
                sid = f"{bucket.sentence_id}|{dialect}" if multi_dialect else bucket.sentence_id
                results.append(
                    (sid, sc.aggregate_sentence(scores, config.sentence_agg, config.ags))
                )

    with open(args.out, "w", encoding="utf-8") as fh:
        for sid, value in results:
            fh.write(f"{sid}\t{value!r}\n")
    manifest.add_output(args.out)
    manifest.write(args.out)
    print(f"scored {len(results)} sentences")
    return 0


def _load_gold(path: str | Path) -> dict[str, float]:
    """Gold file: either id<TAB>value, or a 3-column multi-label file whose
    ids become 1-based row numbers."""
    text = Path(path).read_text(encoding="utf-8")
    first = next((line for line in text.splitlines() if line.strip()), "")
    if len(first.split("\t")) == 3:
        items = cp.load_multilabel(path)
        return {str(i + 1): sc.multilabel_sentence_ags(item) for i, item in enumerate(items)}
    return _read_id_value_tsv(path, "gold")


def cmd_evaluate(args: argparse.Namespace) -> int:
    config = load_pipeline_config(args.config)
    manifest = Manifest("evaluate", config)
    manifest.add_input(args.pred)
    manifest.add_input(args.gold)
    predictions = _read_id_value_tsv(args.pred, "predictions")
    gold = _load_gold(args.gold)
    if set(predictions) != set(gold):
        offending = sorted(set(predictions) ^ set(gold))[0]
        raise ValidationError(
            f"prediction/gold id mismatch; first offending id: {offending!r}"
        )
    if not gold:
        raise ValidationError("no records to evaluate")
    ids = sorted(gold)
    rmse = math.sqrt(sum((predictions[i] - gold[i]) ** 2 for i in ids) / len(ids))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            for i in ids:
                fh.write(f"{i}\t{predictions[i]!r}\t{gold[i]!r}\t{predictions[i] - gold[i]!r}\n")
        manifest.add_output(args.out)
        manifest.write(args.out)
    print(f"RMSE {rmse:.4f} over {len(ids)} sentences")
    return 0


_BIN_NAMES = ("specific", "moderate", "general")


def _bin_of(score: float) -> str:
    if score < 0.1:
        return "specific"
    if score < 0.5:
        return "moderate"
    return "general"


def cmd_stats(args: argparse.Namespace) -> int:
    config = load_pipeline_config(args.config)
    manifest = Manifest("stats", config)
    manifest.add_input(args.annotated)
    bins: dict[str, dict[str, int]] = {}
    chars: dict[str, list[int]] = {}
    words: dict[str, list[int]] = {}
    with open(args.annotated, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            record = json.loads(line)
            dialect = record["dialect"]
            d_bins = bins.setdefault(dialect, {name: 0 for name in _BIN_NAMES})
            for score in record["token_ags"]:
                d_bins[_bin_of(score)] += 1
            chars.setdefault(dialect, []).append(len(record["text"]))
            words.setdefault(dialect, []).append(len(record["tokens"]))
    report = {}
    for dialect in sorted(bins):
        total = sum(bins[dialect].values())
        report[dialect] = {
            name: round(100.0 * bins[dialect][name] / total, 1) if total else 0.0
            for name in _BIN_NAMES
        }
        report[dialect]["tokens"] = total
        report[dialect]["mean_chars"] = round(
            sum(chars[dialect]) / len(chars[dialect]), 1
        )
        report[dialect]["mean_words"] = round(
            sum(words[dialect]) / len(words[dialect]), 1
        )
    if args.out:
        Path(args.out).write_text(
            json.dumps(report, ensure_ascii=False, indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
        manifest.add_output(args.out)
        manifest.write(args.out)
    header = f"{'dialect':<8} {'specific':>9} {'moderate':>9} {'general':>9} {'chars':>7} {'words':>7}"
    print(header)
    for dialect, row in report.items():
        print(
            f"{dialect:<8} {row['specific']:>8.1f}% {row['moderate']:>8.1f}% "
            f"{row['general']:>8.1f}% {row['mean_chars']:>7.1f} {row['mean_words']:>7.1f}"
        )
    return 0


# --------------------------------------------------------------------------
# entry point
# --------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ags-pipeline",
        description="Annotate a multi-dialect parallel corpus with word generality scores.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-tables", help="estimate the etymology model from a lexicon")
    p.add_argument("--lexicon", required=True)
    p.add_argument("--caphi", required=True)
    p.add_argument("--raw-pairs")
    p.add_argument("--alpha", type=float)
    p.add_argument("--config")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_build_tables)

    p = sub.add_parser("align", help="write Pharaoh alignments with the built-in aligner")
    p.add_argument("--corpus", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--config")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("annotate", help="score every token and sentence in a corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--alignments", help="directory of <dialect>.align Pharaoh files")
    p.add_argument("--sentence-agg", choices=("harmonic-k", "mean"))
    p.add_argument("--workers", type=int)
    p.add_argument("--emit-deltas", action="store_true")
    p.add_argument("--dump-alignments", help="write the aggregated alignments TSV here")
    p.add_argument("--word-table", help="write the word AGS table TSV here")
    p.add_argument("--config")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_annotate)

    p = sub.add_parser("score-sentence", help="aggregate word scores into sentence scores")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--predictions", help="TSV sentence_id<TAB>token_index<TAB>pred")
    group.add_argument("--annotated", help="annotated JSON lines from `annotate`")
    group.add_argument("--corpus", help="corpus TSV scored by word-table lookup")
    p.add_argument("--word-table")
    p.add_argument("--default", type=float, default=0.5)
    p.add_argument("--sentence-agg", choices=("harmonic-k", "mean"))
    p.add_argument("--config")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_score_sentence)

    p = sub.add_parser("evaluate", help="RMSE of predicted vs gold sentence scores")
    p.add_argument("--pred", required=True)
    p.add_argument("--gold", required=True, help="id/value TSV or 3-column multi-label TSV")
    p.add_argument("--config")
    p.add_argument("--out", help="per-sentence residuals TSV")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("stats", help="score-bin and length statistics per dialect")
    p.add_argument("--annotated", required=True)
    p.add_argument("--config")
    p.add_argument("--out", help="JSON report path")
    p.set_defaults(func=cmd_stats)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "score-sentence" and not (
        args.predictions or args.annotated or args.corpus
    ):
        parser.error("score-sentence needs --predictions, --annotated, or --corpus")
    try:
        return args.func(args)
    except (PipelineError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
