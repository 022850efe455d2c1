"""
Inicjalizacja pakietu commands - jedno polecenie CLI na moduł
"""
