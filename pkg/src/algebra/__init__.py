"""Exact arithmetic in U(gl_d) and S(gl_d)."""
