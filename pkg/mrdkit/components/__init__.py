# Report components
