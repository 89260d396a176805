# mrdkit
# Self-dual MRD codes: construction and machine verification
