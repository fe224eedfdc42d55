"""Test suite for the Audio Extractor package.""" 