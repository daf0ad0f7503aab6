"""Exact-rational computation of formal invariants of differential graded algebras.

Given a finite-dimensional differential (Gerstenhaber) algebra presented by
structure constants over Q, this package computes, to a chosen truncation
order and with every identity verified exactly:

  * a versal solution of the Master equation  d Gamma + del Gamma + 1/2 [Gamma, Gamma] = 0,
  * the odd homological (Chen) vector field del on the cohomology supermanifold,
  * the minimal L-infinity structure transferred onto cohomology,
  * the induced unital A-infinity / C-infinity products on the tangent sheaf,
    together with the Euler and unit fields.

All arithmetic is exact (fractions.Fraction); there is no floating point and
no tolerance anywhere.
"""

__version__ = "0.1.0"
