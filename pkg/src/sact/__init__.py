"""Radical and torsion theory in the category of finite S-acts."""
