"""Group short noun phrases by WordNet synonymy/hypernymy similarity."""

from .cluster import ClusteringResult, SweepReport, cluster, sweep
from .errors import DigestError, EmptyPhraseError, LexiclustError, MatrixFormatError, WordNetError
from .matrix import SimilarityMatrix, build_matrix, load_matrix, save_matrix
from .normalize import NormalizedPhrase, normalize_corpus, normalize_phrase, read_phrases, tokenize
from .similarity import SimilarityParams, phrase_similarity, word_similarity
from .wordnet import WordNetDb, load_database

__version__ = "0.1.0"
