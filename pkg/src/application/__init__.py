"""
Application layer package.

This package contains the services, controllers and use cases that implement
the control and simulation logic on top of the domain model.
"""
