"""Surfaces built from a square with bands, and the diagram category they carry.

Submodules:

* :mod:`swbcat.graph_core` -- ordered graphs, contraction, crossingless pairings
* :mod:`swbcat.chord` -- twisted chord data, chord slides, caravan normal form
* :mod:`swbcat.swb` -- frames, SWB data, isotopy and handle slides
* :mod:`swbcat.category` -- morphisms of the SWB category
* :mod:`swbcat.cli_io` -- JSON documents, rendering and the ``swb`` command
"""

__version__ = "0.1.0"
