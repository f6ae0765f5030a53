"""Command line: make-examples, train, predict."""

from __future__ import annotations

import argparse
import sys

from .data import load_examples, make_examples, save_examples
from .predict import Regressor, predict_annotated
from .train import TrainConfig, train


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ags-estimator",
        description="Train and apply a contextual word-generality regressor.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("make-examples", help="marked examples from annotated JSON lines")
    p.add_argument("--annotated", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_make_examples)

    p = sub.add_parser("train", help="fit a regressor on a marked-examples file")
    p.add_argument("--examples", required=True)
    p.add_argument("--base-model", default="tiny-transformer")
    p.add_argument("--batch-size", type=int, default=32)
    p.add_argument("--lr", type=float, default=4e-5)
    p.add_argument("--max-steps", type=int, default=10_000)
    p.add_argument("--eval-every", type=int, default=50)
    p.add_argument("--patience", type=int, default=10)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("predict", help="score every token of an annotated corpus")
    p.add_argument("--artifact", required=True)
    p.add_argument("--annotated", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_predict)

    return parser


def cmd_make_examples(args: argparse.Namespace) -> int:
    examples = make_examples(args.annotated)
    save_examples(examples, args.out)
    print(f"wrote {len(examples)} examples")
    return 0


def cmd_train(args: argparse.Namespace) -> int:
    cfg = TrainConfig(
        batch_size=args.batch_size,
        lr=args.lr,
        max_steps=args.max_steps,
        eval_every=args.eval_every,
        patience=args.patience,
        seed=args.seed,
    )
    out = train(load_examples(args.examples), args.base_model, cfg, args.out)
    print(f"saved artifact to {out}")
    return 0


def cmd_predict(args: argparse.Namespace) -> int:
    n = predict_annotated(Regressor(args.artifact), args.annotated, args.out)
    print(f"wrote {n} predictions")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
