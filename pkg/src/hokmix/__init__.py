"""Hokkien-Mandarin code-mixing toolkit.

Corpus synthesis under matrix-language and switch-point constraints,
dictionary-lattice segmentation with phrase chunking, code-mixing metrics,
model-data preparation, and a two-phase human-evaluation service.
"""

__version__ = "0.1.0"
