"""
Inicjalizacja pakietu testów
"""
