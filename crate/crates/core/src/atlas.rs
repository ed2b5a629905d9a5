//! The complete list of indecomposable modules of a representation-finite
//! preprojective algebra, with Hom and Ext¹ tables and a stable file format.

use std::collections::{BTreeMap, HashSet};
use std::fs;
use std::path::Path;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext::{build_extension, ext1_cocycle, sample_classes, ClassSampling};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::quiver::{DimVector, DynkinType, Preprojective, RELATION_CONVENTION};
use crate::rep::{
    cosyzygy, find_isomorphism, hom_dim, indecomposable_summands, loewy_layers, radical, syzygy, top, Module,
    Representation,
};

/// Version of the atlas and graph file formats.
pub const FORMAT_VERSION: u32 = 1;

/// Marker identifying atlas files.
pub const ATLAS_MAGIC: &str = "preproj-atlas";

/// Closure passes allowed before enumeration is declared stuck.
pub const PASS_LIMIT: usize = 64;

/// Random classes tried per nonzero `Ext¹` space during enumeration, on top
/// of the representatives.
pub const ENUMERATION_SAMPLES: usize = 4;

/// Indecomposable modules with canonical ids `0..len`.
#[derive(Clone, Debug)]
pub struct Atlas<F> {
    dynkin: DynkinType,
    alg: Arc<Preprojective<F>>,
    modules: Vec<Representation<F>>,
    aliases: Vec<Option<String>>,
    hom_table: Vec<Vec<usize>>,
    ext_table: Vec<Vec<usize>>,
}

/// Dimension vector plus `(dim Hom(M, X_j))_j` over the atlas order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub dims: DimVector,
    pub homs: Vec<usize>,
}

/// Loewy series written layer by layer from the top, e.g. `"2/13/2"`.
pub fn loewy_label<F: Field>(m: &Representation<F>) -> String {
    loewy_layers(m)
        .iter()
        .map(|layer| {
            layer
                .iter()
                .enumerate()
                .flat_map(|(v, &k)| std::iter::repeat_n((v + 1).to_string(), k))
                .collect::<String>()
        })
        .collect::<Vec<_>>()
        .join("/")
}

/// Seeds of the closure and the coarse sort key derived from them.
struct Closure<F> {
    alg: Arc<Preprojective<F>>,
    seeds: Vec<Representation<F>>,
    known: Vec<Representation<F>>,
    keys: Vec<Vec<usize>>,
    rng: ChaCha8Rng,
    cap: usize,
}

impl<F: Field> Closure<F> {
    /// Total dimension, dimension vector, then Hom dimensions to and from the seeds.
    fn key(&self, m: &Representation<F>) -> Vec<usize> {
        let mut k = vec![m.total_dim()];
        k.extend_from_slice(m.dims());
        k.extend(self.seeds.iter().map(|s| hom_dim(m, s)));
        k.extend(self.seeds.iter().map(|s| hom_dim(s, m)));
        k
    }

    /// Adds the new indecomposable summands of `m`; returns how many were new.
    fn insert(&mut self, m: &Representation<F>) -> Result<usize> {
        if m.is_zero() {
            return Ok(0);
        }
        let mut added = 0;
        for s in indecomposable_summands(m, &mut self.rng)? {
            let key = self.key(&s);
            let seen = (0..self.known.len())
                .any(|i| self.keys[i] == key && find_isomorphism(&self.known[i], &s, &mut self.rng).is_some());
            if !seen {
                self.known.push(s);
                self.keys.push(key);
                added += 1;
            }
        }
        Ok(added)
    }

    fn run(&mut self) -> Result<()> {
        let n = self.alg.vertices();
        let seeds: Vec<Representation<F>> = (0..n)
            .map(|v| Representation::simple(&self.alg, v))
            .chain((0..n).map(|v| Representation::projective(&self.alg, v)))
            .collect();
        self.seeds = seeds.clone();
        for s in &seeds {
            self.insert(s)?;
        }
        let mut ops_done = 0;
        let mut pairs_done: HashSet<(usize, usize)> = HashSet::new();
        let sampling = ClassSampling { exhaustive: false, samples: ENUMERATION_SAMPLES, seed_exact_subspace: false };
        for _ in 0..PASS_LIMIT {
            let mut added = 0;
            let count = self.known.len();
            for i in ops_done..count {
                let m = self.known[i].clone();
                let (rad, _) = radical(&m);
                let derived = [top(&rad), syzygy(&m).0, cosyzygy(&m), rad];
                for d in &derived {
                    added += self.insert(d)?;
                }
            }
            ops_done = count;
            let count = self.known.len();
            for i in 0..count {
                for j in 0..count {
                    if !pairs_done.insert((i, j)) {
                        continue;
                    }
                    let (x, y) = (self.known[i].clone(), self.known[j].clone());
                    if x.total_dim() + y.total_dim() > self.cap {
                        continue;
                    }
                    let e = ext1_cocycle(&x, &y);
                    if e.is_zero() {
                        continue;
                    }
                    for c in sample_classes::<F, _>(e.dim(), sampling, &mut self.rng) {
                        let s = build_extension(&e, &c)?;
                        added += self.insert(&s.mid)?;
                    }
                }
            }
            if added == 0 {
                return Ok(());
            }
        }
        Err(Error::Enumeration(PASS_LIMIT))
    }
}

impl<F: Field> Atlas<F> {
    /// Closure of simples and projectives under extensions, radicals, tops of
    /// radicals, syzygies and cosyzygies, in canonical order.
    pub fn enumerate(dynkin: DynkinType, seed: u64) -> Result<Self> {
        if !dynkin.is_preset() {
            return Err(Error::Input(format!("{dynkin} is not a supported representation-finite type")));
        }
        let alg = Preprojective::<F>::new(dynkin)?;
        Self::enumerate_over(dynkin, alg, seed)
    }

    pub fn enumerate_over(dynkin: DynkinType, alg: Arc<Preprojective<F>>, seed: u64) -> Result<Self> {
        let mut c = Closure {
            alg: alg.clone(),
            seeds: Vec::new(),
            known: Vec::new(),
            keys: Vec::new(),
            rng: ChaCha8Rng::seed_from_u64(seed),
            cap: 4 * dynkin.rank(),
        };
        c.run()?;

        // Canonical order: coarse key, then the Hom row over the coarse order,
        // then discovery order.
        let mut order: Vec<usize> = (0..c.known.len()).collect();
        order.sort_by(|&a, &b| c.keys[a].cmp(&c.keys[b]));
        let coarse: Vec<Representation<F>> = order.iter().map(|&i| c.known[i].clone()).collect();
        let rows: Vec<Vec<usize>> =
            coarse.par_iter().map(|m| coarse.iter().map(|x| hom_dim(m, x)).collect()).collect();
        let mut refined: Vec<usize> = (0..coarse.len()).collect();
        refined.sort_by(|&a, &b| c.keys[order[a]].cmp(&c.keys[order[b]]).then(rows[a].cmp(&rows[b])));
        let modules: Vec<Representation<F>> = refined.iter().map(|&i| coarse[i].clone()).collect();
        Ok(Self::from_modules(dynkin, alg, modules))
    }

    /// Assembles an atlas from modules already in canonical order.
    pub fn from_modules(dynkin: DynkinType, alg: Arc<Preprojective<F>>, modules: Vec<Representation<F>>) -> Self {
        let n = modules.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let cells: Vec<(usize, usize)> = pairs
            .par_iter()
            .map(|&(i, j)| (hom_dim(&modules[i], &modules[j]), ext1_cocycle(&modules[i], &modules[j]).dim()))
            .collect();
        let hom_table = (0..n).map(|i| (0..n).map(|j| cells[i * n + j].0).collect()).collect();
        let ext_table = (0..n).map(|i| (0..n).map(|j| cells[i * n + j].1).collect()).collect();
        let aliases = compute_aliases(&alg, &modules);
        Atlas { dynkin, alg, modules, aliases, hom_table, ext_table }
    }

    pub fn dynkin(&self) -> DynkinType {
        self.dynkin
    }

    pub fn algebra(&self) -> &Arc<Preprojective<F>> {
        &self.alg
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn modules(&self) -> &[Representation<F>] {
        &self.modules
    }

    pub fn module(&self, id: usize) -> &Representation<F> {
        &self.modules[id]
    }

    pub fn alias(&self, id: usize) -> Option<&str> {
        self.aliases[id].as_deref()
    }

    /// Alias if present, otherwise `#id`.
    pub fn name(&self, id: usize) -> String {
        self.alias(id).map_or_else(|| format!("#{id}"), str::to_string)
    }

    pub fn id_by_alias(&self, alias: &str) -> Option<usize> {
        self.aliases.iter().position(|a| a.as_deref() == Some(alias))
    }

    pub fn hom_table(&self) -> &[Vec<usize>] {
        &self.hom_table
    }

    pub fn ext_table(&self) -> &[Vec<usize>] {
        &self.ext_table
    }

    pub fn hom(&self, i: usize, j: usize) -> usize {
        self.hom_table[i][j]
    }

    pub fn ext(&self, i: usize, j: usize) -> usize {
        self.ext_table[i][j]
    }

    /// A module is projective iff `Ext¹(−, M)` vanishes on the atlas and `M`
    /// is a summand of `Λ`; for self-injective `Λ` the latter suffices.
    pub fn projective_ids(&self) -> Vec<usize> {
        (0..self.alg.vertices())
            .map(|v| self.locate(&Representation::projective(&self.alg, v)).ok().flatten().expect("projective in atlas"))
            .collect()
    }

    pub fn simple_ids(&self) -> Vec<usize> {
        (0..self.alg.vertices())
            .map(|v| self.locate(&Representation::simple(&self.alg, v)).ok().flatten().expect("simple in atlas"))
            .collect()
    }

    pub fn fingerprint(&self, m: &Representation<F>) -> Fingerprint {
        Fingerprint { dims: m.dim_vector(), homs: self.modules.iter().map(|x| hom_dim(m, x)).collect() }
    }

    /// The id of the atlas module isomorphic to `m`, or `None` if `m` is
    /// not indecomposable. A fingerprint match without an isomorphism is an
    /// integrity error.
    pub fn locate(&self, m: &Representation<F>) -> Result<Option<usize>> {
        let fp = self.fingerprint(m);
        let hit = (0..self.len()).find(|&i| self.modules[i].dims() == m.dims() && self.hom_table[i] == fp.homs);
        match hit {
            None => Ok(None),
            Some(i) => {
                let mut rng = ChaCha8Rng::seed_from_u64(i as u64);
                if find_isomorphism(&self.modules[i], m, &mut rng).is_some() {
                    Ok(Some(i))
                } else {
                    Err(Error::Integrity(format!("fingerprint of atlas module {i} matched without an isomorphism")))
                }
            }
        }
    }

    /// Atlas ids of the indecomposable summands of `m`, with multiplicity, sorted.
    pub fn locate_summands(&self, m: &Representation<F>, seed: u64) -> Result<Vec<usize>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut ids = Vec::new();
        for s in indecomposable_summands(m, &mut rng)? {
            ids.push(
                self.locate(&s)?
                    .ok_or_else(|| Error::Integrity("indecomposable summand missing from the atlas".into()))?,
            );
        }
        ids.sort_unstable();
        Ok(ids)
    }

    /// Recomputes every table entry and compares with the stored tables.
    pub fn tables_coherent(&self) -> bool {
        let n = self.len();
        (0..n * n).into_par_iter().all(|k| {
            let (i, j) = (k / n, k % n);
            hom_dim(&self.modules[i], &self.modules[j]) == self.hom_table[i][j]
                && ext1_cocycle(&self.modules[i], &self.modules[j]).dim() == self.ext_table[i][j]
        })
    }

    pub fn to_file(&self) -> AtlasFile {
        let dq = self.alg.dq();
        AtlasFile {
            magic: ATLAS_MAGIC.to_string(),
            format_version: FORMAT_VERSION,
            quiver_type: self.dynkin.to_string(),
            field_char: F::CHARACTERISTIC,
            relation_convention: RELATION_CONVENTION.to_string(),
            modules: self
                .modules
                .iter()
                .enumerate()
                .map(|(id, m)| ModuleRecord {
                    id,
                    alias: self.aliases[id].clone(),
                    dim_vector: m.dims().to_vec(),
                    matrices: m
                        .matrix_entries()
                        .into_iter()
                        .enumerate()
                        .map(|(a, e)| (dq.arrow_name(a), e))
                        .collect(),
                })
                .collect(),
            hom_table: self.hom_table.clone(),
            ext_table: self.ext_table.clone(),
        }
    }

    pub fn from_file(file: AtlasFile) -> Result<Self> {
        if file.magic != ATLAS_MAGIC {
            return Err(Error::Format(format!("not an atlas file (magic {:?})", file.magic)));
        }
        if file.format_version != FORMAT_VERSION {
            return Err(Error::Format(format!(
                "atlas format version {} is not supported (expected {FORMAT_VERSION})",
                file.format_version
            )));
        }
        if file.field_char != F::CHARACTERISTIC {
            return Err(Error::Format(format!(
                "atlas was computed over F_{} but the engine is configured for F_{}",
                file.field_char,
                F::CHARACTERISTIC
            )));
        }
        if file.relation_convention != RELATION_CONVENTION {
            return Err(Error::Format("atlas uses a different relation convention".into()));
        }
        let dynkin: DynkinType = file.quiver_type.parse().map_err(|e: Error| Error::Format(e.to_string()))?;
        let alg = Preprojective::<F>::new(dynkin)?;
        let dq = alg.dq();
        let n = file.modules.len();
        let mut modules = Vec::with_capacity(n);
        let mut aliases = Vec::with_capacity(n);
        for (k, rec) in file.modules.into_iter().enumerate() {
            if rec.id != k {
                return Err(Error::Format(format!("module record {k} has id {}", rec.id)));
            }
            let d = &rec.dim_vector;
            if d.len() != dq.vertices() {
                return Err(Error::Format(format!("module {k} has a dimension vector of the wrong length")));
            }
            let mut mats = Vec::with_capacity(dq.arrows().len());
            for a in 0..dq.arrows().len() {
                let arr = dq.arrow(a);
                let name = dq.arrow_name(a);
                let entries = rec
                    .matrices
                    .get(&name)
                    .ok_or_else(|| Error::Format(format!("module {k} lacks arrow {name}")))?;
                let (r, c) = (d[arr.target], d[arr.source]);
                if entries.len() != r * c || entries.iter().any(|&e| e >= F::CHARACTERISTIC) {
                    return Err(Error::Format(format!("module {k}, arrow {name}: bad entries")));
                }
                let data = entries.iter().map(|&e| F::from_i64(e as i64)).collect();
                mats.push(Matrix::new(r, c, data));
            }
            modules.push(Representation::new(&alg, d.clone(), mats).map_err(|e| Error::Format(e.to_string()))?);
            aliases.push(rec.alias);
        }
        let square = |t: &Vec<Vec<usize>>| t.len() == n && t.iter().all(|r| r.len() == n);
        if !square(&file.hom_table) || !square(&file.ext_table) {
            return Err(Error::Format("table shapes do not match the module count".into()));
        }
        Ok(Atlas { dynkin, alg, modules, aliases, hom_table: file.hom_table, ext_table: file.ext_table })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_file())?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: AtlasFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        Self::from_file(file)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent() {
            if !dir.as_os_str().is_empty() {
                fs::create_dir_all(dir)?;
            }
        }
        fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }
}

/// `P<i>` for projectives, `S<i>` for simples, otherwise the Loewy label when
/// it is unique within the atlas.
fn compute_aliases<F: Field>(alg: &Arc<Preprojective<F>>, modules: &[Representation<F>]) -> Vec<Option<String>> {
    let n = alg.vertices();
    let labels: Vec<String> = modules.iter().map(loewy_label).collect();
    modules
        .iter()
        .enumerate()
        .map(|(k, m)| {
            for v in 0..n {
                let p = Representation::projective(alg, v);
                if m.dims() == p.dims() && crate::rep::is_isomorphic(m, &p) {
                    return Some(format!("P{}", v + 1));
                }
                if m.total_dim() == 1 && m.dims()[v] == 1 {
                    return Some(format!("S{}", v + 1));
                }
            }
            let unique = labels.iter().filter(|l| **l == labels[k]).count() == 1;
            unique.then(|| labels[k].clone())
        })
        .collect()
}

/// On-disk atlas layout.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtlasFile {
    pub magic: String,
    pub format_version: u32,
    pub quiver_type: String,
    pub field_char: u64,
    pub relation_convention: String,
    pub modules: Vec<ModuleRecord>,
    pub hom_table: Vec<Vec<usize>>,
    pub ext_table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleRecord {
    pub id: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alias: Option<String>,
    pub dim_vector: Vec<usize>,
    /// Row-major entries in `[0, p)` keyed by arrow name.
    pub matrices: BTreeMap<String, Vec<u64>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::rep::direct_sum;

    type F = Fp<32003>;

    #[test]
    fn a2_atlas() {
        let atlas = Atlas::<F>::enumerate(DynkinType::A(2), 0).unwrap();
        assert_eq!(atlas.len(), 4);
        let names: Vec<String> = (0..4).map(|i| atlas.name(i)).collect();
        assert!(names.contains(&"P1".to_string()) && names.contains(&"S2".to_string()));
    }

    #[test]
    fn a3_atlas_and_aliases() {
        let atlas = Atlas::<F>::enumerate(DynkinType::A(3), 0).unwrap();
        assert_eq!(atlas.len(), 12);
        for label in ["1/2", "2/1", "3/2", "2/3", "13/2", "2/13", "P1", "P2", "P3", "S1", "S2", "S3"] {
            assert!(atlas.id_by_alias(label).is_some(), "missing {label}");
        }
        let ext = atlas.ext_table();
        for i in 0..12 {
            assert_eq!(ext[i][i], 0);
            for j in 0..12 {
                assert_eq!(ext[i][j], ext[j][i]);
            }
        }
        for p in atlas.projective_ids() {
            assert!(ext[p].iter().all(|&e| e == 0));
        }
        assert!(atlas.tables_coherent());
    }

    #[test]
    fn locate_examples() {
        let atlas = Atlas::<F>::enumerate(DynkinType::A(3), 0).unwrap();
        let alg = atlas.algebra().clone();
        let s1 = Representation::simple(&alg, 0);
        assert_eq!(atlas.locate(&s1).unwrap(), atlas.id_by_alias("S1"));
        let p2 = Representation::projective(&alg, 1);
        assert_eq!(atlas.locate(&direct_sum(&s1, &[&p2, &s1])).unwrap(), None);
        let e = Representation::from_arrows(&alg, &[1, 1, 0], &[("a1", Matrix::identity(1))]).unwrap();
        let id = atlas.locate(&e).unwrap().unwrap();
        assert_eq!(atlas.alias(id), Some("1/2"));
        assert_eq!(atlas.module(id).dims(), &[1, 1, 0]);
        let ids = atlas.locate_summands(&direct_sum(&s1, &[&p2, &s1, &s1]), 0).unwrap();
        assert_eq!(ids.len(), 3);
    }

    #[test]
    fn round_trip_and_guards() {
        let atlas = Atlas::<F>::enumerate(DynkinType::A(3), 0).unwrap();
        let text = atlas.to_json().unwrap();
        let back = Atlas::<F>::from_json(&text).unwrap();
        assert_eq!(back.to_json().unwrap(), text);
        assert_eq!(back.modules(), atlas.modules());
        assert_eq!(back.ext_table(), atlas.ext_table());

        let mut file = atlas.to_file();
        file.magic = "something-else".into();
        assert!(matches!(Atlas::<F>::from_file(file), Err(Error::Format(_))));

        let small = Atlas::<Fp<101>>::enumerate(DynkinType::A(3), 0).unwrap();
        let err = Atlas::<F>::from_json(&small.to_json().unwrap());
        assert!(matches!(err, Err(Error::Format(_))));
    }
}
