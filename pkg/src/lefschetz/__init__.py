"""Lefschetz properties of artinian monomial algebras."""
