"""Single-qubit gate synthesis over the V basis."""
