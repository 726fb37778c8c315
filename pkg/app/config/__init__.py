# Налаштування застосунку (pydantic-settings)
