"""Exact operator calculus for nil-Hecke, KLR and extended KLR algebras."""
