"""
Inicjalizacja pakietu src - miary kinematyczne elipsy i okręgu
"""
__version__ = '1.0.0'
