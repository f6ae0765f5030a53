"""Contextual regressor for word generality scores."""

from .data import MARKER, MarkedExample, make_examples, mark_tokens, strip_markers
from .model import PRESETS, Vocab, build_model
from .predict import Regressor, predict_annotated
from .train import TrainConfig, split_by_sentence, train

__version__ = "0.1.0"
