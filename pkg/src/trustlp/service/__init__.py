"""Service layer: pydantic schemas, command handlers, FastAPI app."""
