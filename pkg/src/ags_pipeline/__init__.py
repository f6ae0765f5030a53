"""Cross-dialect lexical generality scoring for parallel Arabic corpora."""

from .alignment import (
    AlignerParams,
    AlignmentAggregate,
    AlignmentSet,
    aggregate,
    builtin_align,
    import_alignments,
)
from .corpus import (
    CaphiInventory,
    LexiconEntry,
    MultiLabelSentence,
    ParallelBucket,
    ParallelCorpus,
    Sentence,
    Token,
    load_caphi_table,
    load_lexicon,
    load_multilabel,
    load_parallel_corpus,
    tokenize,
)
from .distance import DistanceResult, IndelConfig, distance, distance_matrix
from .errors import ParseError, PipelineError, ValidationError
from .etymology import (
    CharContext,
    EtymologyModel,
    ProbTable,
    SubstitutionCost,
    detect_etymological_spellings,
    estimate_et_given_ph,
    estimate_ph_given_et,
    estimate_ph_given_or,
    posterior_et,
    substitution_cost,
)
from .g2p import (
    DEFAULT_VOWELS,
    GAP,
    G2PAlignment,
    G2PCountTable,
    G2PPair,
    align_g2p,
    collect_g2p_counts,
)
from .scoring import (
    AgsConfig,
    SentenceAgs,
    WordAgs,
    lookup_baseline,
    multilabel_sentence_ags,
    sentence_ags,
    smooth,
    word_ags,
)

__version__ = "0.1.0"
