# Логування та числові утиліти
