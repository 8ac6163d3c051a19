# Report models for command output
