"""Finite geometry over GF(q): fields, matrices, quadrics and polar Grassmannians."""
