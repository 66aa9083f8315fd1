from .matrix_io import *

__all__ = ['FORMATS', 'EXTENSIONS', 'MM_HEADER', 'format_matrix', 'write_matrix', 'read_matrix',
           'matrix_to_record', 'format_from_path']
