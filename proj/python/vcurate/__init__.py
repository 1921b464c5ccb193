"""Verilog corpus curation and evaluation primitives."""

from ._vcurate import (
    VcurateError,
    bleu4,
    code_tokens,
    cosine,
    count_tokens,
    curriculum_order,
    exact_jaccard,
    minhash_estimate,
    pass_at_k,
    rouge_l,
    rouge_n,
    split_modules,
    strip_comments,
    success_rate,
    __version__,
)

__all__ = [
    "VcurateError",
    "bleu4",
    "code_tokens",
    "cosine",
    "count_tokens",
    "curriculum_order",
    "exact_jaccard",
    "minhash_estimate",
    "pass_at_k",
    "rouge_l",
    "rouge_n",
    "split_modules",
    "strip_comments",
    "success_rate",
    "__version__",
]
