"""Phenotype file format plugins"""
