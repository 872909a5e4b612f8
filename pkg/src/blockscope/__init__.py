"""blockscope: block decompositions, support varieties, Hochschild
cohomology and flat-point spaces of small cocommutative Hopf algebras
over finite fields, with a verification suite for the structural
identities relating them."""

__version__ = "0.1.0"
