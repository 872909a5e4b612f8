"""Shared per-algebra computation cache.

A Workspace owns one algebra (after any field extension forced by the
block decomposition) and memoizes the expensive objects: semisimple
structure, the resolution of the trivial module, the truncated cohomology
ring, per-module resolutions and Ext spaces, block data and Hochschild
dimensions.  All public verification drivers take a Workspace.
"""

from __future__ import annotations

import numpy as np

from .blocks import BlockDecomposition, block_decompose, center_basis, lies_in_block
from .hopf import HopfAlgebraData
from .modrep import AlgebraOps, ModuleRep, trivial_module
from .resolution import LeftResolution, _ext_space_for
from .varieties import TruncatedGradedRing, block_support, cohomology_ring


class Workspace:
    def __init__(self, algebra: HopfAlgebraData, cap: int = 10, seed: int = 0xB10C,
                 budget: int = 20000, slow: bool = False):
        if cap < 2:
            raise ValueError("cap must be at least 2")
        self.cap = cap
        self.seed = seed
        self.budget = budget
        self.slow = slow
        self.input_algebra = algebra
        self.decomposition: BlockDecomposition = block_decompose(algebra, seed=seed)
        self.algebra = self.decomposition.algebra
        self.F = self.algebra.field
        self.ops = AlgebraOps(self.algebra, seed=seed)
        self._res = {}
        self._ring = None
        self._block_ops = {}
        self._adjoint = {}
        self._hh = {}
        self._simples_in_block = None

    # -- resolutions and the ring -----------------------------------------

    def trivial(self) -> ModuleRep:
        return trivial_module(self.algebra)

    def resolution(self, m: ModuleRep) -> LeftResolution:
        key = m.fingerprint()
        if key not in self._res:
            self._res[key] = LeftResolution(self.ops, m)
        return self._res[key]

    @property
    def res_k(self) -> LeftResolution:
        return self.resolution(self.trivial())

    @property
    def ring(self) -> TruncatedGradedRing:
        if self._ring is None:
            self._ring = cohomology_ring(self.res_k, self.cap)
        return self._ring

    def ext_dims(self, n_module: ModuleRep, upto: int):
        es = _ext_space_for(self.res_k, n_module)
        self.res_k.extend_to(upto + 1)
        return [es.dim(i) for i in range(upto + 1)]

    # -- blocks ------------------------------------------------------------

    @property
    def blocks(self):
        return self.decomposition.blocks

    @property
    def principal_index(self):
        return self.decomposition.principal_index

    def simples_in_block(self, i):
        if self._simples_in_block is None:
            table = []
            for s in self.ops.simples:
                hits = [
                    j
                    for j in range(len(self.blocks))
                    if lies_in_block(s, self.decomposition, j)
                ]
                assert len(hits) == 1, "simple lies in no unique block"
                table.append(hits[0])
            self._simples_in_block = table
        return [
            s for s, b in zip(self.ops.simples, self._simples_in_block) if b == i
        ]

    def block_ops(self, i) -> AlgebraOps:
        if i not in self._block_ops:
            self._block_ops[i] = AlgebraOps(self.blocks[i], seed=self.seed)
        return self._block_ops[i]

    def block_variety(self, i):
        key = ("bsup", i)
        if key not in self._hh:
            self._hh[key] = block_support(self.ring, self.simples_in_block(i))
        return self._hh[key]

    def vg_dim(self):
        """Dimension of the whole cohomology variety (the presentation ideal)."""
        from .poly import PolyIdeal, ideal_dim

        return ideal_dim(PolyIdeal(self.ring.poly_model, list(self.ring.relations)))

    def cache(self, key, builder):
        if key not in self._hh:
            self._hh[key] = builder()
        return self._hh[key]
