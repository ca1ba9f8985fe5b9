# --- eiscong_lib/__init__.py ---
"""Exact Eisenstein-series arithmetic and congruence criteria."""
