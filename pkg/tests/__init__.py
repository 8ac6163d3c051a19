# Tests for the barnette-hamilton pipeline
