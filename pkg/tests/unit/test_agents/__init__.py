# Unit tests for agents module

