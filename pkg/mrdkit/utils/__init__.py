# Algebra modules
