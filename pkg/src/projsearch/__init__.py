"""Project-based meta-search for research papers.

Boolean retrieval over federated paper databases, re-ranked by explicit
per-project relevance feedback, with next-query suggestions and a
concept-drift simulation harness.
"""

__version__ = "0.1.0"
