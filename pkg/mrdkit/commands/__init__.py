# Command implementations
