"""
Application services package.

Geometry (liegroup), inertia and kinematics/dynamics (kindyn) services are
plain function modules; controllers live in the control subpackage.
"""
