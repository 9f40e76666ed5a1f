# Archivo de inicialización del paquete utils
