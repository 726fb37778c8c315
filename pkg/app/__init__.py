# semidef: визначені та узагальнено визначені автомати, непереставні напівгрупи
