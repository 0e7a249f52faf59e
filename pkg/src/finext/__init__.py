"""finext: verification engine for extensive and coextensive morphisms in finite categories."""

__version__ = "0.1.0"
