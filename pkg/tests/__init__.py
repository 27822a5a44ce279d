"""
Tests for BCS Spin Entanglement
"""
