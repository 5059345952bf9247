"""Configuration, errors and shared exact linear algebra."""
