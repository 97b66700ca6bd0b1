"""Regenerates the toy fixtures in this directory.

The corpus is layered: seed keys lead to documents with first-round
misspellings, those lead to second-round ones, and so on, so the spelling
dictionary grows for three iterations and then stops. Run from anywhere:

    python3 generate.py
"""

import json
import random
from pathlib import Path

HERE = Path(__file__).resolve().parent
RULES = HERE.parents[2] / "core" / "data" / "suffix_rules.tsv"

WORDS = """
ev okul kitap masa kapı pencere araba yol şehir köy deniz göl nehir dağ orman ağaç çiçek bahçe park sokak
cadde bina oda mutfak banyo yatak sandalye dolap halı perde lamba saat telefon bilgisayar ekran klavye fare
kalem defter çanta ayakkabı gömlek elbise ceket şapka gözlük para cüzdan anahtar kart bilet otobüs tren uçak
gemi bisiklet durak istasyon havaalanı liman hastane eczane doktor hemşire öğretmen öğrenci müdür işçi memur
polis asker avukat mühendis aşçı garson şoför satıcı müşteri arkadaş komşu aile anne baba kardeş abla ağabey
dede nine çocuk bebek kız oğul kadın adam insan halk millet devlet hükümet meclis bakan başkan seçim parti
ekonomi piyasa fiyat maaş vergi banka kredi borç fatura sigorta şirket fabrika ofis toplantı proje plan rapor
dosya belge mektup haber gazete dergi kitaplık kütüphane müze tiyatro sinema konser şarkı müzik film oyun
resim fotoğraf sanat tarih kültür dil edebiyat şiir roman hikaye masal yazar şair ressam spor futbol basketbol
maç takım oyuncu hakem gol skor kupa yarış koşu yüzme tatil yaz kış bahar güz mevsim hava yağmur kar rüzgar
güneş bulut gökyüzü yıldız ay dünya toprak taş kum su buz ateş duman ışık gölge renk ses koku tat sabah öğle
akşam gece gün hafta yıl zaman an dakika saniye bugün yarın dün şimdi sonra önce hep bazen asla belki evet hayır
yemek kahvaltı ekmek peynir zeytin yumurta süt yoğurt bal reçel çay kahve şeker tuz biber et tavuk balık pilav
çorba salata meyve elma armut portakal muz üzüm kiraz çilek karpuz kavun domates patates soğan sarımsak havuç
iyi kötü güzel çirkin büyük küçük uzun kısa yeni eski genç yaşlı sıcak soğuk hızlı yavaş kolay zor ucuz pahalı
temiz kirli dolu boş açık kapalı doğru yanlış mutlu üzgün yorgun hasta sağlıklı zengin fakir akıllı tembel
çalışkan sessiz gürültülü karanlık aydınlık geniş dar derin yüksek alçak ağır hafif sert yumuşak tatlı acı
kırmızı mavi yeşil sarı siyah beyaz mor turuncu pembe gri kahverengi
ve veya ama fakat çünkü ile için gibi kadar göre rağmen beri doğru karşı sadece bile hem ne de daha en çok az
bir iki üç dört beş altı yedi sekiz dokuz on yirmi otuz kırk elli yüz bin milyon
ben sen o biz siz onlar bu şu burada orada nerede neden nasıl kim hangi her hiç bazı tüm bütün birkaç
geldim gittim gördüm aldım verdim yaptım söyledim düşündüm bildim sevdim okudum yazdım çalıştım oturdum
geldi gitti gördü aldı verdi yaptı söyledi düşündü bildi sevdi okudu yazdı çalıştı oturdu koştu yüzdü uyudu
geliyor gidiyor görüyor alıyor veriyor yapıyor söylüyor düşünüyor biliyor seviyor okuyor yazıyor çalışıyor
gelecek gidecek görecek alacak verecek yapacak söyleyecek düşünecek bilecek sevecek okuyacak yazacak
var yok değil lazım gerek mümkün
yüz göz kulak burun ağız diş dil saç el kol bacak ayak parmak omuz sırt kalp beyin kan kemik deri
problem sorun çözüm soru cevap fikir düşünce bilgi haber konu sebep sonuç amaç hedef yol yöntem sistem
orijinal özel genel önemli gerekli farklı aynı benzer basit karmaşık doğal yapay gerçek sahte
yapabilirim gelebilirim görebilirim söyleyebilirim
her şey herkes hiçbir
""".split()

EXTRA_LEXICON = ["orijinalin", "yüzün"]

VOWELS = set("aeıioöuü")
FRONT = set("eiöü")
BACK = set("aıou")
VOICELESS = set("çfhkpsşt")
AMBIG = {"c": "ç", "ç": "c", "g": "ğ", "ğ": "g", "i": "ı", "ı": "i", "o": "ö", "ö": "o", "s": "ş", "ş": "s", "u": "ü", "ü": "u"}
ALPHABET = "abcçdefgğhıijklmnoöprsştuüvyz'"


def holds(cond, stem):
    last = stem[-1] if stem else None
    vs = [c for c in stem if c in VOWELS]
    lv = vs[-1] if vs else None
    return {
        "any": True,
        "vowel-final": last in VOWELS,
        "consonant-final": last is not None and last.isalpha() and last not in VOWELS,
        "front-vowel": lv in FRONT,
        "back-vowel": lv in BACK,
        "front-unrounded": lv in ("e", "i"),
        "front-rounded": lv in ("ö", "ü"),
        "back-unrounded": lv in ("a", "ı"),
        "back-rounded": lv in ("o", "u"),
        "voiceless-final": last in VOICELESS,
        "voiced-final": last is not None and last not in VOICELESS,
    }[cond]


def load_rules():
    rules = []
    for line in RULES.read_text(encoding="utf-8").splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        suffix, pred = line.split("\t")
        rules.append((suffix, pred.split("+")))
    return rules


class Oracle:
    def __init__(self, lexicon, rules, depth=4):
        self.lexicon, self.rules, self.depth = set(lexicon), rules, depth

    def ok(self, w, depth=None):
        depth = self.depth if depth is None else depth
        if w in self.lexicon:
            return True
        if depth == 0:
            return False
        for suffix, conds in self.rules:
            if w.endswith(suffix):
                stem = w[: -len(suffix)]
                if stem and all(holds(c, stem) for c in conds) and self.ok(stem, depth - 1):
                    return True
        return False

    def inflect(self, rng, stem):
        options = [s + "" for s, conds in self.rules if all(holds(c, stem) for c in conds)]
        return stem + rng.choice(options) if options else stem


def deasciify(w):
    out = {""}
    for c in w:
        out = {p + x for p in out for x in ({c, AMBIG[c]} if c in AMBIG else {c})}
    out.discard(w)
    return out


def edits1(w):
    out = set()
    for i in range(len(w)):
        out.add(w[:i] + w[i + 1 :])
        for c in ALPHABET:
            out.add(w[:i] + c + w[i + 1 :])
    for i in range(len(w) - 1):
        out.add(w[:i] + w[i + 1] + w[i] + w[i + 2 :])
    for i in range(len(w) + 1):
        for c in ALPHABET:
            out.add(w[:i] + c + w[i:])
    out.discard(w)
    return out


def resolve(oracle, w):
    if oracle.ok(w):
        return None
    d = sorted(c for c in deasciify(w) if oracle.ok(c))
    if not d:
        d = sorted(c for c in edits1(w) if oracle.ok(c) and "'" not in c)
    return d[0] if len(d) == 1 else None


def corrupt(rng, oracle, w, taken):
    for _ in range(200):
        chars = list(w)
        amb = [i for i, c in enumerate(chars) if c in AMBIG]
        if amb and rng.random() < 0.6:
            for i in rng.sample(amb, min(len(amb), rng.choice([1, 1, 2]))):
                chars[i] = AMBIG[chars[i]]
        else:
            i = rng.randrange(len(chars))
            op = rng.choice(["del", "sub", "swap"])
            if op == "del" and len(chars) > 3:
                del chars[i]
            elif op == "swap" and i + 1 < len(chars):
                chars[i], chars[i + 1] = chars[i + 1], chars[i]
            else:
                chars[i] = rng.choice("abcdefgklmnprstuyz")
        m = "".join(chars)
        if m not in taken and resolve(oracle, m) == w:
            return m
    return None


def main():
    rng = random.Random(20240601)
    rules = load_rules()
    lexicon = sorted(set(WORDS) | set(EXTRA_LEXICON))
    oracle = Oracle(lexicon, rules)
    assert all(oracle.ok(w) for w in lexicon)

    content = [w for w in WORDS if len(w) >= 4 and " " not in w]
    taken = set(lexicon)

    def valid_word():
        w = rng.choice(WORDS)
        if rng.random() < 0.3 and w in content:
            w = oracle.inflect(rng, w)
        assert oracle.ok(w), w
        return w

    def sentence(extra):
        words = [valid_word() for _ in range(rng.randint(3, 7))]
        for e in extra:
            words.insert(rng.randrange(len(words) + 1), e)
        words[0] = words[0][0].replace("i", "İ").replace("ı", "I").upper() + words[0][1:]
        return " ".join(words) + rng.choice([".", ".", ".", "!", "?"])

    # Seed pairs: manual corrections; keys are kept out of every generated layer.
    seed = []
    seed_words = rng.sample(content, 40)
    for w in seed_words:
        m = corrupt(rng, oracle, w, taken)
        if m and len(seed) < 27:
            seed.append((m, w))
            taken.add(m)
    seed += [("herşey", "her şey"), ("yapa bilirim", "yapabilirim"), ("hiç bir", "hiçbir")]
    taken.update(k for k, _ in seed)

    pool = [w for w in content if w not in {v for _, v in seed}]
    rng.shuffle(pool)

    def layer(n, pinned=()):
        out = list(pinned)
        while len(out) < n:
            w = pool.pop()
            m = corrupt(rng, oracle, w, taken)
            if m:
                out.append((m, w))
                taken.add(m)
        return out

    first = layer(10, [("yuzune", "yüzüne"), ("broblem", "problem"), ("orjinalinde", "orijinalinde")])
    for m, w in first:
        assert resolve(oracle, m) == w, (m, w, resolve(oracle, m))
    second = layer(8)
    third = layer(5)
    unresolvable = ["xqwz", "bllrr", "kzty", "vvqj"]
    for u in unresolvable:
        assert resolve(oracle, u) is None, u

    docs = []
    seed_keys = [k for k, _ in seed]
    for m, _ in first:
        for _ in range(2):
            docs.append(sentence([rng.choice(seed_keys), m]))
    for k in seed_keys:
        docs.append(sentence([k]))
    for m, _ in second:
        docs.append(sentence([rng.choice(first)[0], m]))
        docs.append(sentence([m]) + " " + sentence([]))
    for m, _ in third:
        docs.append(sentence([rng.choice(second)[0], m]))
    for m, _ in third:
        docs.append(sentence([m, rng.choice(unresolvable)]))
    # Misspellings that no key ever leads to.
    for m, _ in layer(4):
        docs.append(sentence([m]))
    docs.append("Dr. " + sentence([]) + " Prof. " + sentence([]))
    while len(docs) < 200:
        docs.append(sentence([]) if rng.random() < 0.8 else sentence([]) + " " + sentence([]))
    rng.shuffle(docs)

    (HERE / "corpus.txt").write_text("\n".join(docs) + "\n", encoding="utf-8")
    (HERE / "corpus.jsonl").write_text(
        "".join(json.dumps({"text": d}, ensure_ascii=False) + "\n" for d in docs[:20]), encoding="utf-8"
    )
    (HERE / "lexicon.txt").write_text("\n".join(lexicon) + "\n", encoding="utf-8")
    rows = sorted(f"{k}\t{v}\tmanual\t0" for k, v in seed)
    (HERE / "seed.tsv").write_text("\n".join(rows) + "\n", encoding="utf-8")
    print(len(docs), "documents,", len(lexicon), "lexicon words,", len(seed), "seed pairs")


if __name__ == "__main__":
    main()
