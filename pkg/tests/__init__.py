# Test suites for mrdkit
