# Доменні типи: перетворення, напівгрупи, автомати, звіти
