from .haar import *

__all__ = ['haar_orthogonal', 'haar_orthogonal_qr', 'haar_unitary']
