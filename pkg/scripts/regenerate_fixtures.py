"""Rewrite the shipped fixture files from their builders."""
from twoquiver.constructions.fixtures import write_fixtures

if __name__ == "__main__":
    for path in write_fixtures():
        print(f"wrote {path.name}")
