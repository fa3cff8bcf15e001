"""RO(C4)-graded Mackey functor homology with F2 coefficients."""

__version__ = "0.1.0"
