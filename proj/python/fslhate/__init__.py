"""Few-shot hate speech classifier bindings.

The compiled extension carries the model, text pipeline, augmentation,
metrics and the batch pipeline entry points.
"""

from ._fslhate import (  # noqa: F401
    SynonymLexicon,
    Vocabulary,
    augment,
    class_weights,
    confusion,
    cosine_lr,
    gen_synthetic,
    layer_norm,
    prf,
    run_eval,
    run_training,
    softmax,
    tokenize,
)

__all__ = [
    "SynonymLexicon",
    "Vocabulary",
    "augment",
    "class_weights",
    "confusion",
    "cosine_lr",
    "gen_synthetic",
    "layer_norm",
    "prf",
    "run_eval",
    "run_training",
    "softmax",
    "tokenize",
]
