# Алгоритми: замикання, класифікація, конструкції, пошук
