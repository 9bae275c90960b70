"""169-class preflop ranking table.

Generated by scripts/gen_preflop_table.py: all-in equity vs a uniform
random hand, Monte-Carlo with seed=20240901, n=500000 per class.
Do not edit by hand.
"""

PREFLOP_RANKS: tuple[tuple[str, int], ...] = (
    ("AA", 1),  # equity 0.85229
    ("KK", 2),  # equity 0.82296
    ("QQ", 3),  # equity 0.79947
    ("JJ", 4),  # equity 0.77550
    ("TT", 5),  # equity 0.75037
    ("99", 6),  # equity 0.72053
    ("88", 7),  # equity 0.69154
    ("AKs", 8),  # equity 0.66906
    ("AQs", 9),  # equity 0.66271
    ("77", 10),  # equity 0.66243
    ("AJs", 11),  # equity 0.65374
    ("AKo", 12),  # equity 0.65352
    ("ATs", 13),  # equity 0.64559
    ("AQo", 14),  # equity 0.64546
    ("AJo", 15),  # equity 0.63519
    ("KQs", 16),  # equity 0.63370
    ("66", 17),  # equity 0.63283
    ("ATo", 18),  # equity 0.62735
    ("A9s", 19),  # equity 0.62704
    ("KJs", 20),  # equity 0.62560
    ("A8s", 21),  # equity 0.62083
    ("KTs", 22),  # equity 0.61743
    ("KQo", 23),  # equity 0.61552
    ("A7s", 24),  # equity 0.60979
    ("A9o", 25),  # equity 0.60842
    ("KJo", 26),  # equity 0.60749
    ("55", 27),  # equity 0.60269
    ("QJs", 28),  # equity 0.60103
    ("A5s", 29),  # equity 0.60062
    ("K9s", 30),  # equity 0.59984
    ("A8o", 31),  # equity 0.59910
    ("A6s", 32),  # equity 0.59872
    ("KTo", 33),  # equity 0.59630
    ("QTs", 34),  # equity 0.59470
    ("A4s", 35),  # equity 0.58963
    ("A7o", 36),  # equity 0.58852
    ("K8s", 37),  # equity 0.58432
    ("A3s", 38),  # equity 0.58308
    ("QJo", 39),  # equity 0.58134
    ("K9o", 40),  # equity 0.57780
    ("A5o", 41),  # equity 0.57706
    ("Q9s", 42),  # equity 0.57665
    ("A6o", 43),  # equity 0.57588
    ("K7s", 44),  # equity 0.57515
    ("A2s", 45),  # equity 0.57464
    ("JTs", 46),  # equity 0.57451
    ("QTo", 47),  # equity 0.57282
    ("44", 48),  # equity 0.57161
    ("A4o", 49),  # equity 0.56660
    ("K6s", 50),  # equity 0.56520
    ("Q8s", 51),  # equity 0.56088
    ("A3o", 52),  # equity 0.55911
    ("K8o", 53),  # equity 0.55890
    ("K5s", 54),  # equity 0.55831
    ("J9s", 55),  # equity 0.55717
    ("Q9o", 56),  # equity 0.55292
    ("K7o", 57),  # equity 0.55200
    ("JTo", 58),  # equity 0.55149
    ("A2o", 59),  # equity 0.54920
    ("K4s", 60),  # equity 0.54886
    ("Q7s", 61),  # equity 0.54331
    ("K6o", 62),  # equity 0.54203
    ("K3s", 63),  # equity 0.54142
    ("J8s", 64),  # equity 0.54005
    ("T9s", 65),  # equity 0.53962
    ("Q6s", 66),  # equity 0.53651
    ("33", 67),  # equity 0.53623
    ("Q8o", 68),  # equity 0.53581
    ("K5o", 69),  # equity 0.53371
    ("J9o", 70),  # equity 0.53177
    ("K2s", 71),  # equity 0.52998
    ("Q5s", 72),  # equity 0.52940
    ("T8s", 73),  # equity 0.52360
    ("J7s", 74),  # equity 0.52276
    ("K4o", 75),  # equity 0.52144
    ("Q4s", 76),  # equity 0.51967
    ("Q7o", 77),  # equity 0.51740
    ("T9o", 78),  # equity 0.51522
    ("J8o", 79),  # equity 0.51473
    ("K3o", 80),  # equity 0.51442
    ("Q3s", 81),  # equity 0.51097
    ("Q6o", 82),  # equity 0.51029
    ("T7s", 83),  # equity 0.50834
    ("98s", 84),  # equity 0.50719
    ("J6s", 85),  # equity 0.50573
    ("K2o", 86),  # equity 0.50452
    ("22", 87),  # equity 0.50346
    ("Q5o", 88),  # equity 0.50144
    ("J5s", 89),  # equity 0.50084
    ("Q2s", 90),  # equity 0.50084
    ("T8o", 91),  # equity 0.49737
    ("J7o", 92),  # equity 0.49700
    ("Q4o", 93),  # equity 0.49177
    ("97s", 94),  # equity 0.49090
    ("J4s", 95),  # equity 0.48972
    ("T6s", 96),  # equity 0.48951
    ("J3s", 97),  # equity 0.48306
    ("Q3o", 98),  # equity 0.48228
    ("98o", 99),  # equity 0.48125
    ("T7o", 100),  # equity 0.47946
    ("87s", 101),  # equity 0.47929
    ("J6o", 102),  # equity 0.47800
    ("96s", 103),  # equity 0.47471
    ("Q2o", 104),  # equity 0.47354
    ("T5s", 105),  # equity 0.47294
    ("J2s", 106),  # equity 0.47258
    ("J5o", 107),  # equity 0.47135
    ("T4s", 108),  # equity 0.46689
    ("86s", 109),  # equity 0.46344
    ("97o", 110),  # equity 0.46230
    ("T6o", 111),  # equity 0.46100
    ("J4o", 112),  # equity 0.46086
    ("95s", 113),  # equity 0.45697
    ("T3s", 114),  # equity 0.45663
    ("76s", 115),  # equity 0.45440
    ("J3o", 116),  # equity 0.45289
    ("87o", 117),  # equity 0.45110
    ("T2s", 118),  # equity 0.44861
    ("85s", 119),  # equity 0.44563
    ("J2o", 120),  # equity 0.44485
    ("96o", 121),  # equity 0.44379
    ("T5o", 122),  # equity 0.44228
    ("94s", 123),  # equity 0.43917
    ("75s", 124),  # equity 0.43824
    ("T4o", 125),  # equity 0.43481
    ("93s", 126),  # equity 0.43282
    ("86o", 127),  # equity 0.43257
    ("65s", 128),  # equity 0.43111
    ("95o", 129),  # equity 0.42701
    ("84s", 130),  # equity 0.42679
    ("T3o", 131),  # equity 0.42605
    ("92s", 132),  # equity 0.42517
    ("76o", 133),  # equity 0.42306
    ("74s", 134),  # equity 0.41785
    ("T2o", 135),  # equity 0.41591
    ("54s", 136),  # equity 0.41499
    ("85o", 137),  # equity 0.41271
    ("64s", 138),  # equity 0.41270
    ("83s", 139),  # equity 0.40811
    ("94o", 140),  # equity 0.40694
    ("75o", 141),  # equity 0.40480
    ("82s", 142),  # equity 0.40189
    ("73s", 143),  # equity 0.40086
    ("93o", 144),  # equity 0.40002
    ("65o", 145),  # equity 0.39957
    ("53s", 146),  # equity 0.39653
    ("63s", 147),  # equity 0.39593
    ("84o", 148),  # equity 0.39513
    ("92o", 149),  # equity 0.39004
    ("74o", 150),  # equity 0.38492
    ("43s", 151),  # equity 0.38475
    ("72s", 152),  # equity 0.38107
    ("54o", 153),  # equity 0.38095
    ("64o", 154),  # equity 0.38042
    ("52s", 155),  # equity 0.37904
    ("62s", 156),  # equity 0.37682
    ("83o", 157),  # equity 0.37388
    ("82o", 158),  # equity 0.36885
    ("42s", 159),  # equity 0.36835
    ("73o", 160),  # equity 0.36574
    ("53o", 161),  # equity 0.36221
    ("63o", 162),  # equity 0.36131
    ("32s", 163),  # equity 0.36029
    ("43o", 164),  # equity 0.35091
    ("72o", 165),  # equity 0.34692
    ("52o", 166),  # equity 0.34191
    ("62o", 167),  # equity 0.33954
    ("42o", 168),  # equity 0.33198
    ("32o", 169),  # equity 0.32232
)
