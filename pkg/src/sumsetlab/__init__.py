"""Sumset sizes, diameter compression and Freiman embeddings for finite sets of integers and lattice points."""
from .compress1d import (CompressionTrace, GapWitness, compress_full, compress_step, compress_tail,
                         compressible_gaps, find_compressible_gap, short_form_split)
from .core import (IntSet, affine_image, hfold_sumset, is_bh_set, make_set, max_size, min_size, normalize,
                   sumset_size)
from .errors import *  # noqa: F401,F403
from .freiman import (Embedding, ResidueSet, centered_residue, dilate_mod, embed_base_g, mod_reduce,
                      verify_freiman_iso)
from .lattice import (AxisGapWitness, LatticeSet, axis_compress_full, axis_compress_step, axis_order, diam_axis,
                      hfold_sumset_lattice, lattice_sumset_size, make_lattice_set)
from .primes import smallest_prime_in
from .range_search import (RescaleResult, SizeRangeReport, enumerate_sizes, exact_N, n_upper_bound,
                           rescale_compress)

__version__ = "0.1.0"
